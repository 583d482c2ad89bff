//! The weighted bipartite graph built for one candidate set, and the
//! translation of its matchings back into clusterings.
//!
//! Vertex classes, left side: `Dist(r)` for rows not covered by a safe
//! group, `SafeExcess(g, i)` for the `exc(g)` rows of a safe group beyond
//! its first `k`, `SafePrime(g, i)` for those first `k` rows. Right side:
//! `Dist(r)` and `SafeExcess(g, i)` private partners, and `Slot(x, j)`,
//! `k` slots per candidate vector (the `T` vertices).
//!
//! Edge families:
//!
//! 1. `Dist(r) - Slot(x, j)` for costly `x` compatible with `r`, weight `w'(x)`
//! 2. `Dist(r) - Dist(r)`, weight `w(r)`
//! 3. `SafePrime(g, i) - Slot(r(g), i)`, weight `w'(r(g))`
//! 4. `SafeExcess(g, i) - Slot(x, j)` for costly `x` compatible with `r(g)`, weight `w'(x)`
//! 5. `SafeExcess(g, i) - SafeExcess(g, i)`, weight `w(r(g))`

use crate::error::{Error, Result};
use crate::matching::{BipartiteGraph, Matching, Side};
use crate::table::{Clustering, Group, Table};

use super::candidates::CandidateSet;

/// A group of at least `k` identical rows whose representative is in `S'`.
#[derive(Clone, Debug)]
pub struct SafeGroup {
    pub group: Group,
    /// Index of the del-0 vector equal to the representative.
    pub vector: usize,
}

/// Split of the rows into safe groups and the remaining rows.
#[derive(Clone, Debug, Default)]
pub struct Partition {
    pub safe: Vec<SafeGroup>,
    /// Sorted indices of rows outside safe groups.
    pub dist: Vec<usize>,
}

/// A group goes to the safe side iff it has at least `k` rows and its
/// representative is a del-0 vector of `set`.
pub fn split_safe_dist(table: &Table, k: usize, groups: &[Group], set: &CandidateSet) -> Partition {
    let mut out = Partition::default();
    for g in groups {
        match set.position_of_exact(g.representative.entries()) {
            Some(vector) if g.size() >= k => out.safe.push(SafeGroup {
                group: g.clone(),
                vector,
            }),
            _ => out.dist.extend(&g.members),
        }
    }
    out.dist.sort_unstable();
    debug_assert_eq!(
        out.dist.len() + out.safe.iter().map(|s| s.group.size()).sum::<usize>(),
        table.n()
    );
    out
}

/// Deliberate corruption of the weights, used as a negative control by the
/// self-test. Never set in normal operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Vector weights `W + m - del(x)`, i.e. without the `+1` that puts them
    /// strictly above `W`.
    DropVectorWeightOffset,
}

/// Row weights `w`, their sum `W`, and vector weights `w'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightScheme {
    /// `w(r) = max_{x ∈ Comp(r, S')} (m - del(x))`.
    pub row: Vec<u64>,
    /// For each row, the compatible vector reaching `w(r)`; ties go to the
    /// canonically smallest.
    pub best_vector: Vec<usize>,
    /// `W = Σ_r w(r)`.
    pub total: u64,
    /// `w'(x) = W + m - del(x) + 1`.
    pub vector: Vec<u64>,
}

pub fn compute_weights(
    table: &Table,
    set: &CandidateSet,
    fault: Option<Fault>,
) -> Result<WeightScheme> {
    let m = table.m() as u64;
    let mut row = Vec::with_capacity(table.n());
    let mut best_vector = Vec::with_capacity(table.n());
    for (i, r) in table.rows().iter().enumerate() {
        // Vectors are canonically sorted, so the first minimum-del vector wins ties.
        let best = set
            .vectors()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.accepts(r))
            .min_by_key(|(_, v)| v.del())
            .map(|(x, _)| x)
            .ok_or(Error::InvalidCandidate { row: i })?;
        row.push(m - set.vectors()[best].del() as u64);
        best_vector.push(best);
    }
    let total: u64 = row.iter().sum();
    let offset = match fault {
        Some(Fault::DropVectorWeightOffset) => 0,
        None => 1,
    };
    let vector = set
        .vectors()
        .iter()
        .map(|v| total + m - v.del() as u64 + offset)
        .collect();
    Ok(WeightScheme {
        row,
        best_vector,
        total,
        vector,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftVertex {
    Dist { row: usize },
    SafeExcess { group: usize, ordinal: usize },
    SafePrime { group: usize, ordinal: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RightVertex {
    Dist {
        row: usize,
    },
    SafeExcess {
        group: usize,
        ordinal: usize,
    },
    /// `T(x, j)`.
    Slot {
        vector: usize,
        ordinal: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeFamily {
    DistToSlot = 1,
    DistPrivate = 2,
    PrimeToOwnSlot = 3,
    ExcessToSlot = 4,
    ExcessPrivate = 5,
}

/// The graph for one candidate set, with back-maps from vertices to rows,
/// groups and vectors.
#[derive(Clone, Debug)]
pub struct SolverGraph {
    pub k: usize,
    pub left: Vec<LeftVertex>,
    pub right: Vec<RightVertex>,
    /// Family of each edge of `graph`, by edge index.
    pub families: Vec<EdgeFamily>,
    pub graph: BipartiteGraph,
    /// Right index of `T(0, 0)`; slots are contiguous from there.
    pub first_slot: usize,
    pub set_size: usize,
}

impl SolverGraph {
    /// Right indices of the `T` vertices.
    pub fn slots(&self) -> std::ops::Range<usize> {
        self.first_slot..self.right.len()
    }

    pub fn slot_index(&self, vector: usize, ordinal: usize) -> usize {
        self.first_slot + vector * self.k + ordinal
    }

    /// Left vertices of the dist and safe-excess classes.
    pub fn rest_left(&self) -> usize {
        self.left
            .iter()
            .filter(|v| !matches!(v, LeftVertex::SafePrime { .. }))
            .count()
    }

    /// True iff every `T` vertex is covered.
    pub fn is_feasible(&self, m: &Matching) -> bool {
        self.slots()
            .all(|t| m.is_covered(Side::Right, t).expect("slot in range"))
    }

    /// Feasible and every left vertex covered.
    pub fn is_complete(&self, m: &Matching) -> bool {
        self.is_feasible(m)
            && (0..self.left.len()).all(|l| m.is_covered(Side::Left, l).expect("left in range"))
    }

    /// Weight of the matching edges incident to `T`.
    pub fn slot_weight(&self, m: &Matching) -> u64 {
        m.edges()
            .iter()
            .map(|&e| self.graph.edge(e))
            .filter(|e| e.right >= self.first_slot)
            .map(|e| e.weight)
            .sum()
    }
}

pub fn build_graph(
    table: &Table,
    k: usize,
    set: &CandidateSet,
    partition: &Partition,
    weights: &WeightScheme,
) -> SolverGraph {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &row in &partition.dist {
        left.push(LeftVertex::Dist { row });
        right.push(RightVertex::Dist { row });
    }
    for (group, sg) in partition.safe.iter().enumerate() {
        for ordinal in 0..sg.group.exc(k) {
            left.push(LeftVertex::SafeExcess { group, ordinal });
            right.push(RightVertex::SafeExcess { group, ordinal });
        }
    }
    for group in 0..partition.safe.len() {
        for ordinal in 0..k {
            left.push(LeftVertex::SafePrime { group, ordinal });
        }
    }
    let first_slot = right.len();
    for vector in 0..set.len() {
        for ordinal in 0..k {
            right.push(RightVertex::Slot { vector, ordinal });
        }
    }

    let mut graph = BipartiteGraph::new(left.len(), right.len());
    let mut families = Vec::new();
    let slot = |x: usize, j: usize| first_slot + x * k + j;
    let costly: Vec<usize> = set.costly().collect();
    let mut add = |l: usize, r: usize, w: u64, f: EdgeFamily| {
        graph
            .add_edge(l, r, w)
            .expect("solver graph edges are distinct");
        families.push(f);
    };
    for (l, vertex) in left.iter().enumerate() {
        match *vertex {
            LeftVertex::Dist { row } => {
                for &x in &costly {
                    if set.vectors()[x].accepts(table.row(row)) {
                        for j in 0..k {
                            add(l, slot(x, j), weights.vector[x], EdgeFamily::DistToSlot);
                        }
                    }
                }
                // Dist vertices come first on both sides, in the same order.
                add(l, l, weights.row[row], EdgeFamily::DistPrivate);
            }
            LeftVertex::SafeExcess { group, .. } => {
                let sg = &partition.safe[group];
                for &x in &costly {
                    if set.vectors()[x].accepts(&sg.group.representative) {
                        for j in 0..k {
                            add(l, slot(x, j), weights.vector[x], EdgeFamily::ExcessToSlot);
                        }
                    }
                }
                add(
                    l,
                    l,
                    weights.row[sg.group.members[0]],
                    EdgeFamily::ExcessPrivate,
                );
            }
            LeftVertex::SafePrime { group, ordinal } => {
                let x = partition.safe[group].vector;
                add(
                    l,
                    slot(x, ordinal),
                    weights.vector[x],
                    EdgeFamily::PrimeToOwnSlot,
                );
            }
        }
    }
    SolverGraph {
        k,
        left,
        right,
        families,
        graph,
        first_slot,
        set_size: set.len(),
    }
}

/// `W' = k Σ_{x ∈ S'} w'(x)`: the `T`-incident weight of any feasible matching.
pub fn feasibility_threshold(weights: &WeightScheme, k: usize) -> u64 {
    k as u64 * weights.vector.iter().sum::<u64>()
}

/// Adds the private edge of every uncovered dist or safe-excess left vertex.
/// Private right vertices have a single neighbour, so this is always a
/// matching of the same weight. A maximum matching can only leave out
/// private edges of weight zero, which arise when a row's sole compatible
/// vector is all stars. Returns the number added.
pub fn complete_matching(sg: &SolverGraph, m: &Matching) -> Result<(Matching, usize)> {
    let mut edges = m.edges().to_vec();
    let mut added = 0;
    for (e, edge) in sg.graph.edges().iter().enumerate() {
        let private = matches!(
            sg.families[e],
            EdgeFamily::DistPrivate | EdgeFamily::ExcessPrivate
        );
        if private
            && !m.is_covered(Side::Left, edge.left)?
            && !m.is_covered(Side::Right, edge.right)?
        {
            if edge.weight > 0 {
                return Err(Error::Internal(format!(
                    "free private edge of weight {} left out of a maximum matching",
                    edge.weight
                )));
            }
            edges.push(e);
            added += 1;
        }
    }
    Ok((Matching::from_edges(&sg.graph, &edges)?, added))
}

/// Clustering read off a complete matching.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub clustering: Clustering,
    /// Candidate vector each row was assigned to.
    pub assigned: Vec<usize>,
    /// `Σ_r del(assigned vector of r)`: what the matching weight accounts for.
    pub assigned_cost: u64,
}

/// Assigns rows to candidate vectors along the matching edges:
/// slot edges put the row in the cluster of that slot's vector, private
/// dist edges use the row's best compatible vector, and private excess
/// edges keep the row with its own group.
///
/// Rows of one group are interchangeable, so the vectors assigned inside a
/// group are finally redistributed in canonical order over its rows in index
/// order. This fixes the output independently of how the matching broke ties.
pub fn extract_clustering(
    table: &Table,
    sg: &SolverGraph,
    partition: &Partition,
    weights: &WeightScheme,
    set: &CandidateSet,
    groups: &[Group],
    matching: &Matching,
) -> Result<Extraction> {
    if !sg.is_complete(matching) {
        return Err(Error::Internal("matching is not complete".into()));
    }
    let k = sg.k;
    let mut assigned: Vec<Option<usize>> = vec![None; table.n()];
    for &e in matching.edges() {
        let edge = sg.graph.edge(e);
        let (row, vector) = match (sg.left[edge.left], sg.right[edge.right]) {
            (LeftVertex::Dist { row }, RightVertex::Slot { vector, .. }) => (row, vector),
            (LeftVertex::Dist { row }, RightVertex::Dist { .. }) => (row, weights.best_vector[row]),
            (LeftVertex::SafePrime { group, ordinal }, RightVertex::Slot { vector, .. }) => {
                (partition.safe[group].group.members[ordinal], vector)
            }
            (LeftVertex::SafeExcess { group, ordinal }, RightVertex::Slot { vector, .. }) => {
                (partition.safe[group].group.members[k + ordinal], vector)
            }
            (LeftVertex::SafeExcess { group, ordinal }, RightVertex::SafeExcess { .. }) => {
                let sg = &partition.safe[group];
                (sg.group.members[k + ordinal], sg.vector)
            }
            (l, r) => {
                return Err(Error::Internal(format!(
                    "edge {l:?} - {r:?} is not a solver edge"
                )))
            }
        };
        if assigned[row].replace(vector).is_some() {
            return Err(Error::Internal(format!("row {row} assigned twice")));
        }
    }
    let mut assigned: Vec<usize> = assigned
        .into_iter()
        .enumerate()
        .map(|(row, v)| v.ok_or_else(|| Error::Internal(format!("row {row} unassigned"))))
        .collect::<Result<_>>()?;

    for g in groups {
        let mut vs: Vec<usize> = g.members.iter().map(|&r| assigned[r]).collect();
        vs.sort_unstable();
        for (&r, v) in g.members.iter().zip(vs) {
            assigned[r] = v;
        }
    }

    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); set.len()];
    for (row, &x) in assigned.iter().enumerate() {
        if !set.vectors()[x].accepts(table.row(row)) {
            return Err(Error::Internal(format!(
                "row {row} assigned to an incompatible vector"
            )));
        }
        blocks[x].push(row);
    }
    if let Some(x) = blocks.iter().position(|b| b.len() < k) {
        return Err(Error::Internal(format!(
            "cluster of vector {x} has fewer than k rows"
        )));
    }
    let assigned_cost = assigned
        .iter()
        .map(|&x| set.vectors()[x].del() as u64)
        .sum();
    let clustering = Clustering::new(table, blocks)?;
    Ok(Extraction {
        clustering,
        assigned,
        assigned_cost,
    })
}
