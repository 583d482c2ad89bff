//! Exact maximum-weight bipartite matching over nonnegative integer weights.
//!
//! The graph is padded to a dense `L x max(R, L)` assignment problem where
//! missing edges cost nothing, and solved with the Hungarian method
//! (shortest augmenting paths with vertex potentials). With nonnegative
//! weights an optimal assignment restricted to real edges is a maximum-weight
//! matching, and every matching extends to an assignment of equal weight.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub left: usize,
    pub right: usize,
    pub weight: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Bipartite graph with `left` and `right` vertex counts and weighted edges.
#[derive(Clone, Debug, Default)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<Edge>,
    pairs: HashSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            ..Default::default()
        }
    }

    pub fn with_edges(left: usize, right: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = BipartiteGraph::new(left, right);
        for &(l, r, w) in edges {
            g.add_edge(l, r, w)?;
        }
        Ok(g)
    }

    /// Adds an edge and returns its index.
    pub fn add_edge(&mut self, left: usize, right: usize, weight: u64) -> Result<usize> {
        if left >= self.left {
            return Err(Error::VertexOutOfRange {
                vertex: left,
                len: self.left,
            });
        }
        if right >= self.right {
            return Err(Error::VertexOutOfRange {
                vertex: right,
                len: self.right,
            });
        }
        if !self.pairs.insert((left, right)) {
            return Err(Error::Usage(format!("duplicate edge ({left}, {right})")));
        }
        self.edges.push(Edge {
            left,
            right,
            weight,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// A copy without the edges rejected by `keep`. Edge indices are renumbered.
    pub fn filtered<F: FnMut(usize, &Edge) -> bool>(&self, mut keep: F) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(self.left, self.right);
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i, e) {
                g.add_edge(e.left, e.right, e.weight)
                    .expect("edges of a valid graph stay valid");
            }
        }
        g
    }
}

/// A set of endpoint-disjoint edges of a [`BipartiteGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<usize>,
    total_weight: u64,
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
}

impl Matching {
    /// Validates that `edge_ids` are endpoint-disjoint edges of `g`.
    pub fn from_edges(g: &BipartiteGraph, edge_ids: &[usize]) -> Result<Matching> {
        let mut left_mate = vec![None; g.left];
        let mut right_mate = vec![None; g.right];
        let mut total_weight = 0u64;
        let mut edges = edge_ids.to_vec();
        edges.sort_unstable_by_key(|&i| (g.edges.get(i).map(|e| e.left), i));
        for &id in &edges {
            let e = *g
                .edges
                .get(id)
                .ok_or_else(|| Error::Usage(format!("edge {id} does not exist")))?;
            if left_mate[e.left].replace(id).is_some() || right_mate[e.right].replace(id).is_some()
            {
                return Err(Error::Usage(format!(
                    "edges share an endpoint at edge {id} ({}, {})",
                    e.left, e.right
                )));
            }
            total_weight = total_weight
                .checked_add(e.weight)
                .ok_or_else(|| Error::Internal("matching weight overflow".into()))?;
        }
        Ok(Matching {
            edges,
            total_weight,
            left_mate,
            right_mate,
        })
    }

    /// Edge indices, ordered by left endpoint.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Index of the matching edge at `vertex`, if any.
    pub fn mate_edge(&self, side: Side, vertex: usize) -> Option<usize> {
        match side {
            Side::Left => self.left_mate.get(vertex).copied().flatten(),
            Side::Right => self.right_mate.get(vertex).copied().flatten(),
        }
    }

    pub fn is_covered(&self, side: Side, vertex: usize) -> Result<bool> {
        let mates = match side {
            Side::Left => &self.left_mate,
            Side::Right => &self.right_mate,
        };
        mates
            .get(vertex)
            .map(Option::is_some)
            .ok_or(Error::VertexOutOfRange {
                vertex,
                len: mates.len(),
            })
    }
}

/// Whether `vertex` on `side` is an endpoint of some edge of `m`.
pub fn is_covered(m: &Matching, side: Side, vertex: usize) -> Result<bool> {
    m.is_covered(side, vertex)
}

/// A maximum-weight matching of `g`. Vertices stay unmatched when that is
/// optimal. The result depends only on `g` (including its edge order).
pub fn max_weight_matching(g: &BipartiteGraph) -> Matching {
    let rows = g.left;
    if rows == 0 || g.right == 0 || g.edges.is_empty() {
        return Matching::from_edges(g, &[]).expect("empty matching is valid");
    }
    let cols = g.right.max(rows);

    // 1-indexed cost matrix; row 0 / column 0 are the algorithm's sentinels.
    let mut cost = vec![vec![0i64; cols + 1]; rows + 1];
    let mut edge_at = vec![vec![None; cols + 1]; rows + 1];
    for (id, e) in g.edges.iter().enumerate() {
        cost[e.left + 1][e.right + 1] = -i64::try_from(e.weight).expect("weight fits in i64");
        edge_at[e.left + 1][e.right + 1] = Some(id);
    }

    let assignment = hungarian(&cost, rows, cols);
    let chosen: Vec<usize> = assignment
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(col, &row)| if row == 0 { None } else { edge_at[row][col] })
        .collect();
    Matching::from_edges(g, &chosen).expect("assignment yields a matching")
}

/// Minimum-cost assignment of every row to a distinct column (`rows <= cols`).
/// Returns, for each column, the assigned row (0 when free).
fn hungarian(cost: &[Vec<i64>], rows: usize, cols: usize) -> Vec<usize> {
    const INF: i64 = i64::MAX / 4;
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = cost[i0][j] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    owner
}
