//! Candidate resolution vectors and candidate sets.

use std::collections::{BTreeSet, HashSet};

use crate::table::{comp_set, resolution_of, Cell, ResolutionVector, SymbolId, Table};

/// Every vector of length `m` with entry `j` drawn from `Σ_j ∪ {*}`, in
/// canonical order (symbol ids ascending, star last, leftmost column most
/// significant). Exponential in `m`; meant for small tables and tests.
pub fn full_space(table: &Table) -> Vec<ResolutionVector> {
    let choices: Vec<Vec<Cell>> = (0..table.m())
        .map(|j| {
            table
                .alphabet(j)
                .ids()
                .map(Cell::Sym)
                .chain(std::iter::once(Cell::Star))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut odometer = vec![0usize; table.m()];
    loop {
        out.push(ResolutionVector::new(
            odometer
                .iter()
                .enumerate()
                .map(|(j, &c)| choices[j][c])
                .collect(),
        ));
        let mut j = table.m();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            odometer[j] += 1;
            if odometer[j] < choices[j].len() {
                break;
            }
            odometer[j] = 0;
        }
    }
}

/// Vectors that can be the resolution vector of a cluster of a k-feasible
/// clustering: exactly the resolution vectors of row subsets with at least
/// `k` compatible rows.
///
/// Every such vector `v` satisfies `resolution_of(rows compatible with v) == v`,
/// so the set is the closure of the rows under the pairwise meet (star where
/// they differ), filtered by the compatible-row count. A del-0 vector in it is
/// the representative of a group of at least `k` rows.
#[derive(Clone, Debug)]
pub struct CandidateSpace {
    vectors: Vec<ResolutionVector>,
    full_size: u64,
}

impl CandidateSpace {
    pub fn new(table: &Table, k: usize) -> CandidateSpace {
        let mut closed: HashSet<ResolutionVector> = HashSet::new();
        let mut frontier: Vec<ResolutionVector> = Vec::new();
        for row in table.rows() {
            let v = ResolutionVector::exact(row);
            if closed.insert(v.clone()) {
                frontier.push(v);
            }
        }
        let mut all: Vec<ResolutionVector> = closed.iter().cloned().collect();
        while let Some(v) = frontier.pop() {
            let mut fresh = Vec::new();
            for w in &all {
                let meet = meet(&v, w);
                if !closed.contains(&meet) {
                    closed.insert(meet.clone());
                    fresh.push(meet);
                }
            }
            all.extend(fresh.iter().cloned());
            frontier.extend(fresh);
        }
        let mut vectors: Vec<ResolutionVector> = all
            .into_iter()
            .filter(|v| table.rows().iter().filter(|r| v.accepts(r)).count() >= k)
            .collect();
        vectors.sort();
        CandidateSpace {
            vectors,
            full_size: table.candidate_space_size(),
        }
    }

    /// Canonically ordered vectors.
    pub fn vectors(&self) -> &[ResolutionVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `Π_j (|Σ_j| + 1)`: size of the unfiltered space.
    pub fn full_size(&self) -> u64 {
        self.full_size
    }
}

fn meet(a: &ResolutionVector, b: &ResolutionVector) -> ResolutionVector {
    ResolutionVector::new(
        a.cells()
            .iter()
            .zip(b.cells())
            .map(|(x, y)| if x == y { *x } else { Cell::Star })
            .collect(),
    )
}

/// Why a candidate set cannot lead to a k-feasible clustering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Empty,
    /// A row is compatible with no vector.
    UncoveredRow(usize),
    /// A del-0 vector is not the representative of a group of >= k rows.
    UnbackedExactVector(usize),
    /// A vector is compatible with no row.
    DeadVector(usize),
    /// More vectors than `⌊n/k⌋`.
    TooLarge,
    Duplicate,
    WrongLength(usize),
}

/// A nonempty, canonically ordered set `S'` of resolution vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    vectors: Vec<ResolutionVector>,
}

impl CandidateSet {
    /// Sorts `vectors` and checks the pruning contract against `table`.
    pub fn new(
        table: &Table,
        k: usize,
        mut vectors: Vec<ResolutionVector>,
    ) -> Result<CandidateSet, Rejection> {
        vectors.sort();
        let set = CandidateSet { vectors };
        set.check(table, k)?;
        Ok(set)
    }

    /// Builds a set from vectors already known to be valid and sorted.
    pub(crate) fn trusted(vectors: Vec<ResolutionVector>) -> CandidateSet {
        debug_assert!(vectors.windows(2).all(|w| w[0] < w[1]));
        CandidateSet { vectors }
    }

    fn check(&self, table: &Table, k: usize) -> Result<(), Rejection> {
        if self.vectors.is_empty() {
            return Err(Rejection::Empty);
        }
        if self.vectors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Rejection::Duplicate);
        }
        if let Some(i) = self.vectors.iter().position(|v| v.len() != table.m()) {
            return Err(Rejection::WrongLength(i));
        }
        if k == 0 || self.vectors.len() > table.n() / k {
            return Err(Rejection::TooLarge);
        }
        let backed: BTreeSet<ResolutionVector> = crate::table::group_rows(table)
            .iter()
            .filter(|g| g.size() >= k)
            .map(|g| ResolutionVector::exact(&g.representative))
            .collect();
        for (i, v) in self.vectors.iter().enumerate() {
            if !table.rows().iter().any(|r| v.accepts(r)) {
                return Err(Rejection::DeadVector(i));
            }
            if v.del() == 0 && !backed.contains(v) {
                return Err(Rejection::UnbackedExactVector(i));
            }
        }
        if let Some(row) = first_uncovered(table, &self.vectors) {
            return Err(Rejection::UncoveredRow(row));
        }
        Ok(())
    }

    pub fn vectors(&self) -> &[ResolutionVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Position of the del-0 vector equal to `representative`, if present.
    pub fn position_of_exact(&self, representative: &[SymbolId]) -> Option<usize> {
        self.vectors.iter().position(|v| {
            v.del() == 0
                && v.cells()
                    .iter()
                    .zip(representative)
                    .all(|(c, s)| *c == Cell::Sym(*s))
        })
    }

    /// Indices of `S'_safe` (no suppression).
    pub fn safe(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vectors.len()).filter(|&i| self.vectors[i].del() == 0)
    }

    /// Indices of `S'_cost` (at least one suppression).
    pub fn costly(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vectors.len()).filter(|&i| self.vectors[i].del() > 0)
    }

    /// `Σ_{x ∈ S'} del(x)`.
    pub fn total_del(&self) -> u64 {
        self.vectors.iter().map(|v| v.del() as u64).sum()
    }
}

/// First row compatible with none of `vectors`.
pub fn first_uncovered(table: &Table, vectors: &[ResolutionVector]) -> Option<usize> {
    table
        .rows()
        .iter()
        .position(|r| comp_set(r, vectors).is_empty())
}

/// Sanity helper for tests: the meet closure equals the resolution vectors
/// of all row subsets (exponential; tiny tables only).
#[doc(hidden)]
pub fn subset_resolutions(table: &Table) -> BTreeSet<ResolutionVector> {
    let n = table.n();
    assert!(n <= 16, "subset enumeration is exponential");
    (1u32..(1 << n))
        .map(|mask| {
            resolution_of((0..n).filter(|i| mask >> i & 1 == 1).map(|i| table.row(i)))
                .expect("nonempty subset")
        })
        .collect()
}
