//! Hardness gadgets: builders that turn a graph into a suppression instance,
//! and certifiers that map solutions back and forth.

pub mod apx;
pub mod clique;

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub use apx::{
    assemble_clustering, audit_distances, build_apx_gadget, classify_vertex_solution,
    clustering_to_cover, cover_to_clustering, ApxGadget, DistanceAudit, DistanceViolation,
    VertexSolutionKind,
};
pub use clique::{build_clique_gadget, clique_to_clustering, clustering_to_clique, CliqueGadget};

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputGraph {
    n: usize,
    /// Sorted, each pair with `u < v`.
    edges: Vec<(usize, usize)>,
}

impl InputGraph {
    /// Rejects self-loops, repeated edges and endpoints `>= n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<InputGraph> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, len: n });
                }
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("edge {u} {v} listed twice")));
            }
        }
        Ok(InputGraph {
            n,
            edges: seen.into_iter().collect(),
        })
    }

    /// Parses an edge list: one `u v` pair per line, 0-indexed, `#` starts a
    /// comment. An optional `p <n>` line fixes the vertex count; otherwise it
    /// is one more than the largest endpoint.
    pub fn parse(text: &str) -> Result<InputGraph> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || {
                Error::Parse(format!(
                    "line {}: cannot parse {:?}",
                    lineno + 1,
                    raw.trim()
                ))
            };
            match fields.as_slice() {
                ["p", n] => {
                    if declared.is_some() || !edges.is_empty() {
                        return Err(Error::Parse(format!(
                            "line {}: `p` line must come first and only once",
                            lineno + 1
                        )));
                    }
                    declared = Some(n.parse::<usize>().map_err(|_| bad())?);
                }
                [u, v] => {
                    edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
                }
                _ => return Err(bad()),
            }
        }
        let inferred = edges
            .iter()
            .map(|&(u, v): &(usize, usize)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        InputGraph::new(declared.unwrap_or(inferred), edges)
    }

    pub fn complete(n: usize) -> InputGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        InputGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Index of the edge `{u, v}` in [`edges`](Self::edges).
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Edge indices incident to `v`, in edge order.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
            .collect()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    pub fn is_vertex_cover(&self, cover: &BTreeSet<usize>) -> bool {
        self.edges
            .iter()
            .all(|(u, v)| cover.contains(u) || cover.contains(v))
    }

    pub fn is_clique(&self, vertices: &BTreeSet<usize>) -> bool {
        let vs: Vec<usize> = vertices.iter().copied().collect();
        vs.iter()
            .enumerate()
            .all(|(a, &u)| vs[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}
