use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use anyhow::{Context, Result};
use kanon::io::write_records;
use kanon::reductions::{
    build_apx_gadget, build_clique_gadget, clique_to_clustering, clustering_to_clique,
    clustering_to_cover, cover_to_clustering, InputGraph,
};
use kanon::table::Table;
use serde::Serialize;

use crate::{emit, to_json, GadgetArgs, GadgetKind};

#[derive(Serialize)]
struct CliqueMeta {
    schema_version: u32,
    gadget: &'static str,
    vertices: usize,
    edges: usize,
    h: usize,
    k: usize,
    budget: u64,
    rows: usize,
    columns: usize,
    /// Row indices of each edge group, keyed `"i-j"`.
    edge_rows: BTreeMap<String, Vec<usize>>,
    zero_rows: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

#[derive(Serialize)]
struct VccMeta {
    schema_version: u32,
    gadget: &'static str,
    vertices: usize,
    edges: usize,
    k: usize,
    rows: usize,
    columns: usize,
    /// `6|V| + 11|E| + 9`; add 3 per cover vertex.
    base_cost: u64,
    /// Row indices of the six groups of each vertex.
    vertex_groups: Vec<[Vec<usize>; 6]>,
    /// Row indices of the six groups of each edge, keyed `"i-j"`.
    edge_groups: BTreeMap<String, [Vec<usize>; 6]>,
    x_rows: Vec<usize>,
    /// Edge `"i-j"` docked at groups 1, 2, 3 of each vertex.
    docking: Vec<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

#[derive(Serialize)]
struct Certificate {
    vertices: Vec<usize>,
    cost: u64,
    recovered: Vec<usize>,
}

fn read_graph(path: &Path) -> Result<InputGraph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InputGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_vertices(path: &Path) -> Result<BTreeSet<usize>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad vertex {t:?} in {}", path.display()))
        })
        .collect()
}

fn edge_key(&(i, j): &(usize, usize)) -> String {
    format!("{i}-{j}")
}

fn write_table(common: &GadgetArgs, table: &Table) -> Result<()> {
    if common.out.is_none() && common.report.is_none() && common.certify.is_some() {
        return Ok(());
    }
    let records: Vec<Vec<String>> = (0..table.n())
        .map(|r| table.row_text(r).into_iter().map(str::to_owned).collect())
        .collect();
    let mut out = Vec::new();
    write_records(&mut out, None, &records)?;
    emit(common.out.as_ref(), &out)
}

pub fn run(kind: &GadgetKind) -> Result<u8> {
    match kind {
        GadgetKind::Clique { graph, h, common } => {
            let g = read_graph(graph)?;
            let gad = build_clique_gadget(&g, *h)?;
            if let Some(w) = &gad.warning {
                eprintln!("warning: {w}");
            }
            let certificate = match &common.certify {
                Some(path) => {
                    let clique = read_vertices(path)?;
                    let c = clique_to_clustering(&gad, &clique)?;
                    let back = clustering_to_clique(&gad, &c)?;
                    anyhow::ensure!(back == clique, "recovered {back:?} instead of {clique:?}");
                    println!(
                        "cost {} (budget {}), clique recovered",
                        c.cost(),
                        gad.budget
                    );
                    Some(Certificate {
                        vertices: clique.into_iter().collect(),
                        cost: c.cost(),
                        recovered: back.into_iter().collect(),
                    })
                }
                None => None,
            };
            write_table(common, &gad.table)?;
            if let Some(path) = &common.report {
                let meta = CliqueMeta {
                    schema_version: 1,
                    gadget: "clique",
                    vertices: g.vertex_count(),
                    edges: g.edge_count(),
                    h: gad.h,
                    k: gad.k,
                    budget: gad.budget,
                    rows: gad.row_count(),
                    columns: gad.column_count(),
                    edge_rows: g
                        .edges()
                        .iter()
                        .map(edge_key)
                        .zip(gad.edge_rows.iter().cloned())
                        .collect(),
                    zero_rows: gad.zero_rows.clone(),
                    warning: gad.warning.clone(),
                    certificate,
                };
                emit(Some(path), &to_json(&meta))?;
            }
        }
        GadgetKind::Vcc { graph, common } => {
            let g = read_graph(graph)?;
            let gad = build_apx_gadget(&g)?;
            let certificate = match &common.certify {
                Some(path) => {
                    let cover = read_vertices(path)?;
                    let c = cover_to_clustering(&gad, &cover)?;
                    let back = clustering_to_cover(&gad, &c)?;
                    anyhow::ensure!(back == cover, "recovered {back:?} instead of {cover:?}");
                    println!(
                        "cost {} for a cover of size {}, cover recovered",
                        c.cost(),
                        cover.len()
                    );
                    Some(Certificate {
                        vertices: cover.into_iter().collect(),
                        cost: c.cost(),
                        recovered: back.into_iter().collect(),
                    })
                }
                None => None,
            };
            write_table(common, &gad.table)?;
            if let Some(path) = &common.report {
                let meta = VccMeta {
                    schema_version: 1,
                    gadget: "vcc",
                    vertices: g.vertex_count(),
                    edges: g.edge_count(),
                    k: gad.k,
                    rows: gad.row_count(),
                    columns: gad.table.m(),
                    base_cost: gad.cover_cost(0),
                    vertex_groups: gad.vertex_rows.clone(),
                    edge_groups: g
                        .edges()
                        .iter()
                        .map(edge_key)
                        .zip(gad.edge_rows.iter().cloned())
                        .collect(),
                    x_rows: gad.x_rows.clone(),
                    docking: gad
                        .docking
                        .iter()
                        .map(|d| d.map(|e| edge_key(&g.edges()[e])))
                        .collect(),
                    certificate,
                };
                emit(Some(path), &to_json(&meta))?;
            }
        }
    }
    Ok(0)
}
