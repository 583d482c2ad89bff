//! Clique gadget: a graph `G` and a clique size `h` become a table with
//! `k = 2h²` that admits a k-feasible clustering of cost at most `6h³`
//! exactly when `G` has an `h`-clique.
//!
//! Layout: columns `0..2h` carry the edge symbol, column `2h + v` flags
//! vertex `v`. Each edge `{i, j}` contributes `k + 1` identical rows
//! `e{i}-{j}` (2h times), then `1` at columns `2h+i`, `2h+j` and `0`
//! elsewhere. The final `k - C(h,2)` rows are all `0`.

use std::collections::BTreeSet;

use super::InputGraph;
use crate::error::{Error, Result};
use crate::table::{Clustering, Table};

#[derive(Clone, Debug)]
pub struct CliqueGadget {
    pub graph: InputGraph,
    pub h: usize,
    pub k: usize,
    /// Cost bound `6h³`.
    pub budget: u64,
    pub table: Table,
    /// Rows of each edge group, by edge index.
    pub edge_rows: Vec<Vec<usize>>,
    /// The all-zero rows.
    pub zero_rows: Vec<usize>,
    /// Set when a simple degree count already rules out an `h`-clique.
    pub warning: Option<String>,
}

fn choose2(h: usize) -> usize {
    h * (h - 1) / 2
}

pub fn build_clique_gadget(graph: &InputGraph, h: usize) -> Result<CliqueGadget> {
    if h < 2 {
        return Err(Error::Usage(format!(
            "clique size must be at least 2, got {h}"
        )));
    }
    if choose2(h) > graph.edge_count() {
        return Err(Error::Usage(format!(
            "a {h}-clique needs {} edges but the graph has {}",
            choose2(h),
            graph.edge_count()
        )));
    }
    let k = 2 * h * h;
    let width = 2 * h + graph.vertex_count();
    let mut records: Vec<Vec<String>> = Vec::new();
    let mut edge_rows = Vec::new();
    for &(i, j) in graph.edges() {
        let mut row = vec![format!("e{i}-{j}"); 2 * h];
        row.extend(
            (0..graph.vertex_count()).map(|v| if v == i || v == j { "1" } else { "0" }.to_string()),
        );
        edge_rows.push((records.len()..records.len() + k + 1).collect());
        records.extend(std::iter::repeat_n(row, k + 1));
    }
    let zero_rows: Vec<usize> = (records.len()..records.len() + k - choose2(h)).collect();
    records.extend(std::iter::repeat_n(
        vec!["0".to_string(); width],
        k - choose2(h),
    ));
    let table = Table::from_records(records)?;

    let dense = (0..graph.vertex_count())
        .filter(|&v| graph.degree(v) >= h - 1)
        .count();
    let warning = (dense < h).then(|| {
        format!(
            "only {dense} vertices have degree >= {}, so no {h}-clique exists",
            h - 1
        )
    });

    let gadget = CliqueGadget {
        graph: graph.clone(),
        h,
        k,
        budget: 6 * (h as u64).pow(3),
        table,
        edge_rows,
        zero_rows,
        warning,
    };
    gadget.check_separation()?;
    Ok(gadget)
}

impl CliqueGadget {
    /// Every zero row differs from every edge row in each of the first `2h`
    /// columns.
    pub fn check_separation(&self) -> Result<()> {
        for &z in &self.zero_rows {
            for rows in &self.edge_rows {
                let (a, b) = (
                    self.table.row(z).entries(),
                    self.table.row(rows[0]).entries(),
                );
                if let Some(t) = (0..2 * self.h).find(|&t| a[t] == b[t]) {
                    return Err(Error::Internal(format!(
                        "zero row {z} agrees with edge row {} at column {t}",
                        rows[0]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.table.n()
    }

    pub fn column_count(&self) -> usize {
        self.table.m()
    }
}

/// Moves the first row of every clique edge group next to the zero rows.
pub fn clique_to_clustering(gadget: &CliqueGadget, clique: &BTreeSet<usize>) -> Result<Clustering> {
    if clique.len() != gadget.h {
        return Err(Error::Usage(format!(
            "expected {} vertices, got {}",
            gadget.h,
            clique.len()
        )));
    }
    if let Some(&v) = clique.iter().find(|&&v| v >= gadget.graph.vertex_count()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            len: gadget.graph.vertex_count(),
        });
    }
    if !gadget.graph.is_clique(clique) {
        return Err(Error::Usage(format!("{clique:?} is not a clique")));
    }
    let mut zero_block = gadget.zero_rows.clone();
    let mut blocks = Vec::new();
    for (e, &(i, j)) in gadget.graph.edges().iter().enumerate() {
        let rows = &gadget.edge_rows[e];
        if clique.contains(&i) && clique.contains(&j) {
            zero_block.push(rows[0]);
            blocks.push(rows[1..].to_vec());
        } else {
            blocks.push(rows.clone());
        }
    }
    blocks.push(zero_block);
    Clustering::new(&gadget.table, blocks)
}

/// Reads the clique off a k-feasible clustering of cost at most `6h³`: the
/// endpoints of the edges whose rows share a block with the zero rows.
pub fn clustering_to_clique(
    gadget: &CliqueGadget,
    clustering: &Clustering,
) -> Result<BTreeSet<usize>> {
    let invalid = |msg: String| Err(Error::CertificateInvalid(msg));
    if clustering.assignment().len() != gadget.table.n() {
        return invalid("clustering does not cover the gadget rows".into());
    }
    if !clustering.is_k_feasible(gadget.k) {
        return invalid(format!("some block has fewer than {} rows", gadget.k));
    }
    if clustering.cost() > gadget.budget {
        return invalid(format!(
            "cost {} exceeds {}",
            clustering.cost(),
            gadget.budget
        ));
    }
    let assignment = clustering.assignment();
    let block = assignment[gadget.zero_rows[0]];
    if gadget.zero_rows.iter().any(|&r| assignment[r] != block) {
        return invalid("zero rows are split across blocks".into());
    }
    let mut used_rows = 0;
    let mut vertices = BTreeSet::new();
    for (e, &(i, j)) in gadget.graph.edges().iter().enumerate() {
        let inside = gadget.edge_rows[e]
            .iter()
            .filter(|&&r| assignment[r] == block)
            .count();
        if inside > 0 {
            used_rows += inside;
            vertices.insert(i);
            vertices.insert(j);
        }
    }
    if vertices.len() != gadget.h || !gadget.graph.is_clique(&vertices) {
        return invalid(format!(
            "vertices {vertices:?} do not form a {}-clique",
            gadget.h
        ));
    }
    if used_rows != choose2(gadget.h) {
        return invalid(format!(
            "{used_rows} edge rows join the zero rows, expected {}",
            choose2(gadget.h)
        ));
    }
    Ok(vertices)
}
