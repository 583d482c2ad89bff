//! Exact solver parameterized by the column count and the per-column
//! alphabet sizes.
//!
//! For every candidate set `S'` of resolution vectors the solver builds the
//! weighted bipartite graph of [`graph`], takes a maximum-weight matching and
//! reads a clustering off it. With `L` the number of left vertices, a
//! complete matching `M` satisfies
//!
//! ```text
//! w(M) = (W + 1) k |S'| + m L - cost
//! ```
//!
//! where `cost` is the number of entries the induced clustering suppresses
//! per its assigned vectors. The budget version accepts the first `S'`
//! whose matching reaches `(W + 1) k |S'| + m L - e`; the minimization
//! version keeps the smallest `cost` over all candidate sets.
//!
//! Candidate sets are enumerated by increasing size, then in canonical
//! (lexicographic) order of their vectors. Sets that cannot give a k-feasible
//! clustering are skipped: see [`CandidateSpace`] and [`CandidateSet`].
//! Branches whose cost lower bound `k Σ del(x)` already exceeds the budget
//! (or reaches the best cost found) are cut.

pub mod candidates;
pub mod graph;

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::matching::{max_weight_matching, BipartiteGraph, Matching};
use crate::table::{group_rows, Clustering, Group, ResolutionVector, Table};

pub use candidates::{full_space, CandidateSet, CandidateSpace, Rejection};
pub use graph::{
    build_graph, complete_matching, compute_weights, extract_clustering, feasibility_threshold,
    split_safe_dist, EdgeFamily, Extraction, Fault, LeftVertex, Partition, RightVertex, SafeGroup,
    SolverGraph, WeightScheme,
};

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverOptions {
    /// Negative-control hook; leave `None`.
    pub fault: Option<Fault>,
}

/// Counters collected while enumerating candidate sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// `Π_j (|Σ_j| + 1)`.
    pub full_space: u64,
    /// Vectors left after the closure filter.
    pub candidate_vectors: usize,
    /// Candidate sets generated at full size.
    pub examined: u64,
    /// Generated sets rejected because some row has no compatible vector.
    pub pruned_uncovered: u64,
    /// Branches cut by the cost lower bound (each may stand for many sets).
    pub bound_cutoffs: u64,
    /// Sets for which a matching was computed.
    pub evaluated: u64,
    /// Evaluated sets whose maximum matching leaves a `T` vertex uncovered.
    pub infeasible: u64,
    /// Zero-weight private edges added to complete a matching.
    pub zero_weight_completions: u64,
    /// Maximum matchings that were not complete although a matching covering
    /// all of `T` exists. Must stay zero.
    pub completeness_violations: u64,
}

impl SolveStats {
    pub fn pruned(&self) -> u64 {
        self.pruned_uncovered + self.bound_cutoffs
    }

    fn absorb(&mut self, ev: &Evaluation) {
        self.evaluated += 1;
        self.zero_weight_completions += ev.completions as u64;
        if !ev.feasible {
            self.infeasible += 1;
            if ev.saturable {
                self.completeness_violations += 1;
            }
        }
    }
}

/// Everything computed for one candidate set.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub set: CandidateSet,
    pub partition: Partition,
    pub weights: WeightScheme,
    pub graph: SolverGraph,
    /// Maximum-weight matching after zero-weight completion.
    pub matching: Matching,
    pub completions: usize,
    pub feasible: bool,
    /// Whether some matching covers all of `T`; computed only when the
    /// maximum matching does not.
    pub saturable: bool,
    /// `(W + 1) k |S'| + m L`.
    pub threshold_term: u64,
    /// Present iff the matching is complete.
    pub extraction: Option<Extraction>,
}

impl Evaluation {
    pub fn matching_weight(&self) -> u64 {
        self.matching.total_weight()
    }

    /// `threshold_term - w(M)` for complete matchings.
    pub fn matching_cost(&self) -> Option<u64> {
        self.extraction
            .as_ref()
            .map(|_| self.threshold_term - self.matching_weight())
    }
}

/// Builds the graph for `set`, matches it and extracts the clustering.
///
/// Fails with [`Error::Internal`] when the matching weight disagrees with
/// the cost accounting of the clustering it induces.
pub fn evaluate(
    table: &Table,
    k: usize,
    groups: &[Group],
    set: &CandidateSet,
    options: &SolverOptions,
) -> Result<Evaluation> {
    let partition = split_safe_dist(table, k, groups, set);
    let weights = compute_weights(table, set, options.fault)?;
    let graph = build_graph(table, k, set, &partition, &weights);
    let raw = max_weight_matching(&graph.graph);
    let (matching, completions) = complete_matching(&graph, &raw)?;
    let feasible = graph.is_feasible(&matching);
    let saturable = feasible || t_saturable(&graph);

    let m = table.m() as u64;
    let kk = k as u64;
    let s = set.len() as u64;
    let threshold_term = (weights.total + 1) * kk * s + m * graph.left.len() as u64;

    let extraction = if feasible {
        let ex = extract_clustering(table, &graph, &partition, &weights, set, groups, &matching)?;
        // Weight identity: every edge weight decomposes into a constant part
        // and `m - del` of the vector the edge assigns its row to.
        let rest_del: u64 = matching
            .edges()
            .iter()
            .filter(|&&e| {
                matches!(
                    graph.families[e],
                    EdgeFamily::DistPrivate | EdgeFamily::ExcessPrivate
                )
            })
            .map(|&e| match graph.left[graph.graph.edge(e).left] {
                LeftVertex::Dist { row } => set.vectors()[weights.best_vector[row]].del() as u64,
                _ => 0,
            })
            .sum();
        let accounted = kk * set.total_del() + rest_del;
        if threshold_term.checked_sub(accounted) != Some(matching.total_weight()) {
            return Err(Error::Internal(format!(
                "matching weight {} differs from {} - {}",
                matching.total_weight(),
                threshold_term,
                accounted
            )));
        }
        if ex.assigned_cost != accounted {
            return Err(Error::Internal(format!(
                "clustering accounts {} suppressions, matching {}",
                ex.assigned_cost, accounted
            )));
        }
        if ex.clustering.cost() > ex.assigned_cost {
            return Err(Error::Internal(
                "cluster suppresses beyond its vector".into(),
            ));
        }
        Some(ex)
    } else {
        None
    };

    Ok(Evaluation {
        set: set.clone(),
        partition,
        weights,
        graph,
        matching,
        completions,
        feasible,
        saturable,
        threshold_term,
        extraction,
    })
}

/// Whether some matching covers every `T` vertex, by a maximum-cardinality
/// matching on the `T`-incident edges alone.
fn t_saturable(sg: &SolverGraph) -> bool {
    let first = sg.first_slot;
    let unit = {
        let mut g = BipartiteGraph::new(sg.graph.left_count(), sg.graph.right_count());
        for e in sg.graph.edges().iter().filter(|e| e.right >= first) {
            g.add_edge(e.left, e.right, 1)
                .expect("subgraph edges are distinct");
        }
        g
    };
    max_weight_matching(&unit).total_weight() as usize == sg.slots().len()
}

/// Outcome of a successful solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub candidate_set: Vec<ResolutionVector>,
    pub clustering: Clustering,
    /// Suppressed entries of `clustering`.
    pub cost: u64,
    /// Cost implied by the matching weight: `threshold_term - matching_weight`.
    /// Equals `cost` for minimization; for the budget version it may exceed
    /// `cost` when a cluster ends up agreeing on a column its vector stars.
    pub matching_cost: u64,
    pub matching_weight: u64,
    /// `W`.
    pub total_row_weight: u64,
    pub threshold_term: u64,
    pub left_vertices: usize,
    pub stats: SolveStats,
    pub elapsed: Duration,
}

impl SolveReport {
    fn from_evaluation(ev: &Evaluation, stats: SolveStats, started: Instant) -> SolveReport {
        let ex = ev.extraction.as_ref().expect("accepted sets are complete");
        SolveReport {
            candidate_set: ev.set.vectors().to_vec(),
            clustering: ex.clustering.clone(),
            cost: ex.clustering.cost(),
            matching_cost: ev.threshold_term - ev.matching_weight(),
            matching_weight: ev.matching_weight(),
            total_row_weight: ev.weights.total,
            threshold_term: ev.threshold_term,
            left_vertices: ev.graph.left.len(),
            stats,
            elapsed: started.elapsed(),
        }
    }
}

/// Visits candidate sets in enumeration order. `visit` sees each generated
/// set that covers all rows; `bound` is the largest admissible `k Σ del`.
fn enumerate<B, V>(
    table: &Table,
    k: usize,
    space: &CandidateSpace,
    stats: &mut SolveStats,
    bound: B,
    mut visit: V,
) -> Result<()>
where
    B: Fn() -> Option<u64>,
    V: FnMut(&CandidateSet, &mut SolveStats) -> Result<ControlFlow<()>>,
{
    struct Walk<'a, B, V> {
        table: &'a Table,
        k: u64,
        vectors: &'a [ResolutionVector],
        bound: B,
        visit: V,
        chosen: Vec<usize>,
    }

    impl<B, V> Walk<'_, B, V>
    where
        B: Fn() -> Option<u64>,
        V: FnMut(&CandidateSet, &mut SolveStats) -> Result<ControlFlow<()>>,
    {
        fn go(
            &mut self,
            start: usize,
            size: usize,
            del: u64,
            stats: &mut SolveStats,
        ) -> Result<ControlFlow<()>> {
            if self.chosen.len() == size {
                stats.examined += 1;
                let vs: Vec<ResolutionVector> = self
                    .chosen
                    .iter()
                    .map(|&i| self.vectors[i].clone())
                    .collect();
                if candidates::first_uncovered(self.table, &vs).is_some() {
                    stats.pruned_uncovered += 1;
                    return Ok(ControlFlow::Continue(()));
                }
                return (self.visit)(&CandidateSet::trusted(vs), stats);
            }
            let remaining = size - self.chosen.len();
            for i in start..=self.vectors.len() - remaining {
                let d = del + self.k * self.vectors[i].del() as u64;
                if (self.bound)().is_some_and(|b| d > b) {
                    // Later vectors may have smaller del, so only this branch goes.
                    stats.bound_cutoffs += 1;
                    continue;
                }
                self.chosen.push(i);
                let flow = self.go(i + 1, size, d, stats)?;
                self.chosen.pop();
                if flow.is_break() {
                    return Ok(flow);
                }
            }
            Ok(ControlFlow::Continue(()))
        }
    }

    let max_size = (table.n() / k).min(space.len());
    let mut walk = Walk {
        table,
        k: k as u64,
        vectors: space.vectors(),
        bound,
        visit: &mut visit,
        chosen: Vec::new(),
    };
    for size in 1..=max_size {
        if walk.go(0, size, 0, stats)?.is_break() {
            break;
        }
    }
    Ok(())
}

fn check_k(table: &Table, k: usize) -> Result<()> {
    if k == 0 || k > table.n() {
        return Err(Error::InvalidK { k, n: table.n() });
    }
    Ok(())
}

fn initial_stats(space: &CandidateSpace) -> SolveStats {
    SolveStats {
        full_space: space.full_size(),
        candidate_vectors: space.len(),
        ..Default::default()
    }
}

/// Decision version: the first candidate set, in enumeration order, whose
/// maximum matching is feasible and reaches `threshold_term - budget`.
/// `Ok(None)` when no clustering suppresses at most `budget` entries.
pub fn solve_budget(
    table: &Table,
    k: usize,
    budget: u64,
    options: &SolverOptions,
) -> Result<Option<SolveReport>> {
    solve_budget_with_stats(table, k, budget, options).map(|(r, _)| r)
}

/// As [`solve_budget`], also returning the counters when nothing is accepted.
pub fn solve_budget_with_stats(
    table: &Table,
    k: usize,
    budget: u64,
    options: &SolverOptions,
) -> Result<(Option<SolveReport>, SolveStats)> {
    check_k(table, k)?;
    let started = Instant::now();
    let groups = group_rows(table);
    let space = CandidateSpace::new(table, k);
    let mut stats = initial_stats(&space);
    let mut accepted: Option<Evaluation> = None;
    enumerate(
        table,
        k,
        &space,
        &mut stats,
        || Some(budget),
        |set, stats| {
            let ev = evaluate(table, k, &groups, set, options)?;
            stats.absorb(&ev);
            if ev.feasible && ev.matching_weight() + budget >= ev.threshold_term {
                accepted = Some(ev);
                return Ok(ControlFlow::Break(()));
            }
            Ok(ControlFlow::Continue(()))
        },
    )?;
    let report = accepted.map(|ev| SolveReport::from_evaluation(&ev, stats, started));
    Ok((report, stats))
}

/// Minimum-cost clustering over all candidate sets. Ties go to the set that
/// comes first in enumeration order.
pub fn solve_min(table: &Table, k: usize, options: &SolverOptions) -> Result<SolveReport> {
    check_k(table, k)?;
    let started = Instant::now();
    let groups = group_rows(table);
    let space = CandidateSpace::new(table, k);
    let mut stats = initial_stats(&space);
    let best: std::cell::Cell<Option<u64>> = std::cell::Cell::new(None);
    let mut winner: Option<Evaluation> = None;
    enumerate(
        table,
        k,
        &space,
        &mut stats,
        // Only strictly cheaper sets can replace the incumbent.
        || best.get().map(|b| b.saturating_sub(1)),
        |set, stats| {
            if best.get().is_some_and(|b| k as u64 * set.total_del() >= b) {
                stats.bound_cutoffs += 1;
                return Ok(ControlFlow::Continue(()));
            }
            let ev = evaluate(table, k, &groups, set, options)?;
            stats.absorb(&ev);
            if let Some(cost) = ev.matching_cost() {
                if best.get().is_none_or(|b| cost < b) {
                    best.set(Some(cost));
                    winner = Some(ev);
                }
            }
            Ok(ControlFlow::Continue(()))
        },
    )?;
    let ev = winner
        .ok_or_else(|| Error::Internal("no candidate set admits a k-feasible clustering".into()))?;
    let report = SolveReport::from_evaluation(&ev, stats, started);
    if report.cost != report.matching_cost {
        return Err(Error::Internal(format!(
            "optimal matching cost {} but clustering cost {}",
            report.matching_cost, report.cost
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
