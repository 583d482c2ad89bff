//! Vertex-cover gadget on cubic graphs: three columns, `k = 3`, and a
//! clustering of cost `6|V| + 3|C| + 11|E| + 9` for every vertex cover `C`.
//!
//! Symbols: `v{i}` for vertex `i`, `v{i}.{h}` for the private symbol of its
//! docking group `h`, `e{i}-{j}` and `e{i}-{j}.{t}` for edge `{i, j}`, and
//! `x{t}` for the three isolating rows.
//!
//! Groups are numbered from 0 in code:
//!
//! * vertex `i`: `0..3` are the docking groups `v{i}.{h} v{i} v{i}.{h}` with
//!   two rows each, `3..6` are `v{i} v{i} v{i}.{h}` with one row each
//! * edge `{i, j}`, `i < j`, docked at `h` of `i` and `h'` of `j`:
//!   `0` is `v{i}.{h} e v{i}.{h}`, `1` is `v{i}.{h} e v{j}.{h'}` (two rows),
//!   `2` is `v{j}.{h'} e v{j}.{h'}`, `3..6` are `e.{t} e e.{t}`
//!
//! The incident edges of a vertex, sorted by endpoints, dock at its groups
//! `0, 1, 2` in that order.

use std::collections::BTreeSet;

use super::InputGraph;
use crate::error::{Error, Result};
use crate::table::{hamming, Clustering, Table};

const VERTEX_GROUP_SIZES: [usize; 6] = [2, 2, 2, 1, 1, 1];
const EDGE_GROUP_SIZES: [usize; 6] = [1, 2, 1, 1, 1, 1];

#[derive(Clone, Debug)]
pub struct ApxGadget {
    pub graph: InputGraph,
    pub k: usize,
    pub table: Table,
    /// `vertex_rows[i][g]`: rows of group `g` of vertex `i`.
    pub vertex_rows: Vec<[Vec<usize>; 6]>,
    /// `edge_rows[e][g]`: rows of group `g` of edge `e`.
    pub edge_rows: Vec<[Vec<usize>; 6]>,
    pub x_rows: Vec<usize>,
    /// `docking[i][h]`: the edge docked at group `h` of vertex `i`.
    pub docking: Vec<[usize; 3]>,
    /// Docking group at each endpoint of edge `e`, lower endpoint first.
    pub edge_docks: Vec<(usize, usize)>,
}

/// How a clustering treats the rows of one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexSolutionKind {
    /// Docking group `h` with group `3 + h`, for each `h`. Vertex in the cover.
    TypeA,
    /// Each docking group with the facing edge group, plus groups `3..6`
    /// together. Vertex outside the cover.
    TypeB,
    Other,
}

pub fn build_apx_gadget(graph: &InputGraph) -> Result<ApxGadget> {
    if !graph.is_cubic() {
        return Err(Error::Usage(
            "the vertex-cover gadget needs a cubic graph".into(),
        ));
    }
    let n = graph.vertex_count();
    let docking: Vec<[usize; 3]> = (0..n)
        .map(|v| {
            let inc = graph.incident(v);
            [inc[0], inc[1], inc[2]]
        })
        .collect();
    let dock_of = |v: usize, e: usize| {
        docking[v]
            .iter()
            .position(|&d| d == e)
            .expect("incident edge")
    };

    let mut records: Vec<[String; 3]> = Vec::new();
    let push_group = |records: &mut Vec<[String; 3]>, row: [String; 3], count: usize| {
        let start = records.len();
        records.extend(std::iter::repeat_n(row, count));
        (start..start + count).collect::<Vec<usize>>()
    };

    let mut vertex_rows = Vec::with_capacity(n);
    for i in 0..n {
        let v = format!("v{i}");
        let private = |h: usize| format!("v{i}.{}", h + 1);
        let groups: [Vec<usize>; 6] = std::array::from_fn(|g| {
            let row = if g < 3 {
                [private(g), v.clone(), private(g)]
            } else {
                [v.clone(), v.clone(), private(g - 3)]
            };
            push_group(&mut records, row, VERTEX_GROUP_SIZES[g])
        });
        vertex_rows.push(groups);
    }

    let mut edge_rows = Vec::with_capacity(graph.edge_count());
    let mut edge_docks = Vec::with_capacity(graph.edge_count());
    for (e, &(i, j)) in graph.edges().iter().enumerate() {
        let (x, y) = (dock_of(i, e), dock_of(j, e));
        edge_docks.push((x, y));
        let si = format!("v{i}.{}", x + 1);
        let sj = format!("v{j}.{}", y + 1);
        let se = format!("e{i}-{j}");
        let groups: [Vec<usize>; 6] = std::array::from_fn(|g| {
            let row = match g {
                0 => [si.clone(), se.clone(), si.clone()],
                1 => [si.clone(), se.clone(), sj.clone()],
                2 => [sj.clone(), se.clone(), sj.clone()],
                t => {
                    let st = format!("e{i}-{j}.{}", t + 1);
                    [st.clone(), se.clone(), st]
                }
            };
            push_group(&mut records, row, EDGE_GROUP_SIZES[g])
        });
        edge_rows.push(groups);
    }

    let x_rows: Vec<usize> = (1..=3)
        .flat_map(|t| {
            push_group(
                &mut records,
                [format!("x{t}"), format!("x{t}"), format!("x{t}")],
                1,
            )
        })
        .collect();

    let table = Table::from_records(records)?;
    let gadget = ApxGadget {
        graph: graph.clone(),
        k: 3,
        table,
        vertex_rows,
        edge_rows,
        x_rows,
        docking,
        edge_docks,
    };
    let audit = audit_distances(&gadget);
    if let Some(v) = audit.violations.first() {
        return Err(Error::Internal(format!(
            "distance fact violated: rows {} and {}: {}",
            v.rows.0, v.rows.1, v.fact
        )));
    }
    Ok(gadget)
}

impl ApxGadget {
    pub fn row_count(&self) -> usize {
        self.table.n()
    }

    /// `6|V| + 3|C| + 11|E| + 9`.
    pub fn cover_cost(&self, cover_size: usize) -> u64 {
        (6 * self.graph.vertex_count() + 3 * cover_size + 11 * self.graph.edge_count() + 9) as u64
    }

    /// All rows of vertex `i`.
    pub fn vertex_block(&self, i: usize) -> Vec<usize> {
        self.vertex_rows[i].iter().flatten().copied().collect()
    }

    /// All rows of edge `e`.
    pub fn edge_block(&self, e: usize) -> Vec<usize> {
        self.edge_rows[e].iter().flatten().copied().collect()
    }

    /// The edge group of `e` that shares the docking symbol of endpoint `v`.
    pub fn facing_group(&self, e: usize, v: usize) -> &[usize] {
        let (i, _) = self.graph.edges()[e];
        if v == i {
            &self.edge_rows[e][0]
        } else {
            &self.edge_rows[e][2]
        }
    }

    /// The rows of `rows` as a standalone table.
    pub fn sub_table(&self, rows: &[usize]) -> Result<Table> {
        Table::from_records(rows.iter().map(|&r| self.table.row_text(r)))
    }

    fn vertex_blocks(&self, i: usize, kind: VertexSolutionKind) -> Vec<Vec<usize>> {
        let g = &self.vertex_rows[i];
        match kind {
            VertexSolutionKind::TypeA => (0..3)
                .map(|h| [&g[h][..], &g[h + 3][..]].concat())
                .collect(),
            VertexSolutionKind::TypeB => {
                let mut blocks: Vec<Vec<usize>> = (0..3)
                    .map(|h| [&g[h][..], self.facing_group(self.docking[i][h], i)].concat())
                    .collect();
                blocks.push([&g[3][..], &g[4][..], &g[5][..]].concat());
                blocks
            }
            VertexSolutionKind::Other => Vec::new(),
        }
    }
}

/// Builds the clustering that treats each vertex as `kinds` says.
///
/// Edge rows not taken by a type-B endpoint are grouped as follows: with no
/// type-B endpoint, groups `0,1` and `2..6`; with one, groups `3..6` and group
/// `1` with the remaining end group; with two, groups `1,3,4,5`.
pub fn assemble_clustering(gadget: &ApxGadget, kinds: &[VertexSolutionKind]) -> Result<Clustering> {
    if kinds.len() != gadget.graph.vertex_count() {
        return Err(Error::Usage(format!(
            "expected {} vertex kinds, got {}",
            gadget.graph.vertex_count(),
            kinds.len()
        )));
    }
    if kinds.contains(&VertexSolutionKind::Other) {
        return Err(Error::Usage("every vertex must be type A or type B".into()));
    }
    let mut blocks = Vec::new();
    for (i, &kind) in kinds.iter().enumerate() {
        blocks.extend(gadget.vertex_blocks(i, kind));
    }
    for (e, &(i, j)) in gadget.graph.edges().iter().enumerate() {
        let g = &gadget.edge_rows[e];
        let tail = [&g[3][..], &g[4][..], &g[5][..]].concat();
        let b = |v: usize| kinds[v] == VertexSolutionKind::TypeB;
        match (b(i), b(j)) {
            (false, false) => {
                blocks.push([&g[0][..], &g[1][..]].concat());
                blocks.push([&g[2][..], &tail[..]].concat());
            }
            (true, false) => {
                blocks.push(tail);
                blocks.push([&g[1][..], &g[2][..]].concat());
            }
            (false, true) => {
                blocks.push(tail);
                blocks.push([&g[1][..], &g[0][..]].concat());
            }
            (true, true) => blocks.push([&g[1][..], &tail[..]].concat()),
        }
    }
    blocks.push(gadget.x_rows.clone());
    Clustering::new(&gadget.table, blocks)
}

/// Type A on the cover, type B elsewhere.
pub fn cover_to_clustering(gadget: &ApxGadget, cover: &BTreeSet<usize>) -> Result<Clustering> {
    let n = gadget.graph.vertex_count();
    if let Some(&v) = cover.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, len: n });
    }
    if !gadget.graph.is_vertex_cover(cover) {
        return Err(Error::Usage(format!("{cover:?} is not a vertex cover")));
    }
    let kinds: Vec<VertexSolutionKind> = (0..n)
        .map(|v| {
            if cover.contains(&v) {
                VertexSolutionKind::TypeA
            } else {
                VertexSolutionKind::TypeB
            }
        })
        .collect();
    let clustering = assemble_clustering(gadget, &kinds)?;
    if clustering.cost() != gadget.cover_cost(cover.len()) {
        return Err(Error::Internal(format!(
            "cover of size {} gives cost {}",
            cover.len(),
            clustering.cost()
        )));
    }
    Ok(clustering)
}

/// Whether the clustering's blocks over the rows of vertex `v` form one of
/// the two optimal patterns.
pub fn classify_vertex_solution(
    gadget: &ApxGadget,
    clustering: &Clustering,
    v: usize,
) -> VertexSolutionKind {
    let blocks: BTreeSet<Vec<usize>> = clustering.partition().into_iter().collect();
    let contains_all = |wanted: Vec<Vec<usize>>| {
        wanted.into_iter().all(|mut b| {
            b.sort_unstable();
            blocks.contains(&b)
        })
    };
    if contains_all(gadget.vertex_blocks(v, VertexSolutionKind::TypeA)) {
        VertexSolutionKind::TypeA
    } else if contains_all(gadget.vertex_blocks(v, VertexSolutionKind::TypeB)) {
        VertexSolutionKind::TypeB
    } else {
        VertexSolutionKind::Other
    }
}

/// Reads the cover off a canonical clustering: the type-A vertices.
///
/// Canonical means: one block contains the three `x` rows and suppresses
/// every entry, every vertex is type A or type B, no edge joins two type-B
/// vertices, and the cost equals `6|V| + 3|C| + 11|E| + 9`.
pub fn clustering_to_cover(gadget: &ApxGadget, clustering: &Clustering) -> Result<BTreeSet<usize>> {
    let bad = |msg: String| Err(Error::NonCanonical(msg));
    if clustering.assignment().len() != gadget.table.n() {
        return bad("clustering does not cover the gadget rows".into());
    }
    if !clustering.is_k_feasible(gadget.k) {
        return bad("some block has fewer than 3 rows".into());
    }
    let assignment = clustering.assignment();
    let xb = assignment[gadget.x_rows[0]];
    if gadget.x_rows.iter().any(|&r| assignment[r] != xb) {
        return bad("the x rows are split".into());
    }
    if clustering.blocks()[xb].resolution().del() != gadget.table.m() {
        return bad("the block of the x rows keeps an entry".into());
    }
    let mut cover = BTreeSet::new();
    for v in 0..gadget.graph.vertex_count() {
        match classify_vertex_solution(gadget, clustering, v) {
            VertexSolutionKind::TypeA => {
                cover.insert(v);
            }
            VertexSolutionKind::TypeB => {}
            VertexSolutionKind::Other => {
                return bad(format!("vertex {v} is neither type A nor type B"))
            }
        }
    }
    if let Some((i, j)) = gadget
        .graph
        .edges()
        .iter()
        .find(|(i, j)| !cover.contains(i) && !cover.contains(j))
    {
        return bad(format!("adjacent vertices {i} and {j} are both type B"));
    }
    if clustering.cost() != gadget.cover_cost(cover.len()) {
        return bad(format!(
            "cost {} differs from {} for a cover of size {}",
            clustering.cost(),
            gadget.cover_cost(cover.len()),
            cover.len()
        ));
    }
    Ok(cover)
}

/// Where a row sits in the gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Vertex { v: usize, group: usize },
    Edge { e: usize, group: usize },
    X,
}

/// One violated distance fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceViolation {
    pub rows: (usize, usize),
    pub distance: usize,
    pub fact: String,
}

/// Outcome of checking the gadget's Hamming-distance facts over all row pairs.
#[derive(Clone, Debug, Default)]
pub struct DistanceAudit {
    pub pairs: u64,
    /// Pairs in different vertex or edge blocks that must be at distance 3.
    pub cross_block_pairs: u64,
    /// Docking-group rows paired with the facing edge group (distance 1).
    pub docking_pairs: u64,
    pub violations: Vec<DistanceViolation>,
}

/// Checks every pair of rows against the expected distances:
///
/// * rows of different vertices, of a vertex and an edge it is not on, of
///   different edges, and of `x` with anything: 3
/// * within a vertex: at most 2, and 1 exactly between docking group `h` and
///   group `3 + h`, or between two of the groups `3..6`
/// * within an edge: at most 2, and 1 exactly between consecutive groups among
///   `0, 1, 2`
/// * edge row and a row of one of its endpoints: 1 exactly between the
///   endpoint's docking group for that edge and the facing edge group; 2 only
///   when the vertex row is in that docking group or its group `3 + h`
pub fn audit_distances(gadget: &ApxGadget) -> DistanceAudit {
    let mut place = vec![Place::X; gadget.table.n()];
    for (v, groups) in gadget.vertex_rows.iter().enumerate() {
        for (group, rows) in groups.iter().enumerate() {
            for &r in rows {
                place[r] = Place::Vertex { v, group };
            }
        }
    }
    for (e, groups) in gadget.edge_rows.iter().enumerate() {
        for (group, rows) in groups.iter().enumerate() {
            for &r in rows {
                place[r] = Place::Edge { e, group };
            }
        }
    }

    let mut audit = DistanceAudit::default();
    let n = gadget.table.n();
    for a in 0..n {
        for b in a + 1..n {
            audit.pairs += 1;
            let d = hamming(gadget.table.row(a), gadget.table.row(b)).expect("equal widths");
            let (ok, fact) = expected(gadget, place[a], place[b], d, &mut audit);
            if !ok {
                audit.violations.push(DistanceViolation {
                    rows: (a, b),
                    distance: d,
                    fact,
                });
            }
        }
    }
    audit
}

fn expected(
    gadget: &ApxGadget,
    pa: Place,
    pb: Place,
    d: usize,
    audit: &mut DistanceAudit,
) -> (bool, String) {
    use Place::*;
    let cross = |audit: &mut DistanceAudit| {
        audit.cross_block_pairs += 1;
        (
            d == 3,
            "rows of unrelated blocks are at distance 3".to_string(),
        )
    };
    match (pa, pb) {
        (X, _) | (_, X) => (d == 3, "x rows are at distance 3 from every row".into()),
        (Vertex { v: v1, group: g1 }, Vertex { v: v2, group: g2 }) => {
            if v1 != v2 {
                return cross(audit);
            }
            let one = g1 == g2 + 3 || g2 == g1 + 3 || (g1 >= 3 && g2 >= 3 && g1 != g2);
            let ok = d <= 2 && (d == 1) == one && (d == 0) == (g1 == g2);
            (
                ok,
                format!("vertex groups {g1} and {g2}: at most 2, 1 iff paired"),
            )
        }
        (Edge { e: e1, group: g1 }, Edge { e: e2, group: g2 }) => {
            if e1 != e2 {
                return cross(audit);
            }
            let one = g1.max(g2) <= 2 && g1.abs_diff(g2) == 1;
            let ok = d <= 2 && (d == 1) == one && (d == 0) == (g1 == g2);
            (
                ok,
                format!("edge groups {g1} and {g2}: at most 2, 1 iff consecutive end groups"),
            )
        }
        (Vertex { v, group: gv }, Edge { e, group: ge })
        | (Edge { e, group: ge }, Vertex { v, group: gv }) => {
            let (i, j) = gadget.graph.edges()[e];
            if v != i && v != j {
                return cross(audit);
            }
            let (dock, facing) = if v == i {
                (gadget.edge_docks[e].0, 0)
            } else {
                (gadget.edge_docks[e].1, 2)
            };
            let docking_pair = gv == dock && ge == facing;
            if docking_pair {
                audit.docking_pairs += 1;
            }
            let near = gv == dock || gv == dock + 3;
            let ok = (d == 1) == docking_pair && (d != 2 || near) && d >= 1;
            (ok, format!("vertex group {gv} and edge group {ge}: 1 iff docking pair, 2 only near the dock"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_min;

    fn k4() -> ApxGadget {
        build_apx_gadget(&InputGraph::complete(4)).unwrap()
    }

    #[test]
    fn k4_shape() {
        let g = k4();
        assert_eq!(g.row_count(), 81);
        assert_eq!(g.table.m(), 3);
        for e in 0..6 {
            assert_eq!(g.edge_block(e).len(), 7);
        }
        // Vertex 0 is on edges 0-1, 0-2, 0-3, docked in that order.
        assert_eq!(g.docking[0], [0, 1, 2]);
        assert_eq!(g.docking[3], [2, 4, 5]);
        assert_eq!(g.edge_docks[5], (2, 2));
        assert_eq!(
            g.table.row_text(g.edge_rows[0][1][0]),
            vec!["v0.1", "e0-1", "v1.1"]
        );
    }

    #[test]
    fn rejects_non_cubic() {
        let triangle = InputGraph::parse("0 1\n1 2\n0 2\n").unwrap();
        assert!(matches!(build_apx_gadget(&triangle), Err(Error::Usage(_))));
    }

    #[test]
    fn audit_is_clean() {
        let a = audit_distances(&k4());
        assert_eq!(a.pairs, 81 * 80 / 2);
        assert!(a.violations.is_empty(), "{:?}", a.violations);
        // Each of the 12 (vertex, edge) incidences pairs 2 docking rows with 1 row.
        assert_eq!(a.docking_pairs, 24);
    }

    #[test]
    fn local_costs() {
        let g = k4();
        let typea = assemble_clustering(&g, &[VertexSolutionKind::TypeA; 4]).unwrap();
        for b in typea.blocks() {
            if b.rows().iter().all(|r| g.vertex_block(0).contains(r)) {
                assert_eq!(b.cost(), 3);
            }
        }
        assert_eq!(typea.cost(), g.cover_cost(4));
    }

    #[test]
    fn covers_round_trip() {
        let g = k4();
        for cover in [
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![1, 2, 3],
            vec![0, 1, 2, 3],
        ] {
            let cover: BTreeSet<usize> = cover.into_iter().collect();
            let c = cover_to_clustering(&g, &cover).unwrap();
            assert!(c.is_k_feasible(3));
            assert_eq!(c.cost(), g.cover_cost(cover.len()));
            assert_eq!(clustering_to_cover(&g, &c).unwrap(), cover);
        }
        assert_eq!(g.cover_cost(3), 108);
        assert_eq!(g.cover_cost(4), 111);
        assert!(cover_to_clustering(&g, &[0, 1].into()).is_err());
    }

    #[test]
    fn classification() {
        let g = k4();
        let c = cover_to_clustering(&g, &[1, 2, 3].into()).unwrap();
        assert_eq!(
            classify_vertex_solution(&g, &c, 0),
            VertexSolutionKind::TypeB
        );
        assert_eq!(
            classify_vertex_solution(&g, &c, 1),
            VertexSolutionKind::TypeA
        );

        let mut blocks = c.partition();
        let merged: Vec<usize> = g.vertex_block(2);
        blocks.retain(|b| !b.iter().any(|r| merged.contains(r)));
        blocks.push(merged);
        let c = Clustering::new(&g.table, blocks).unwrap();
        assert_eq!(
            classify_vertex_solution(&g, &c, 2),
            VertexSolutionKind::Other
        );
        assert!(matches!(
            clustering_to_cover(&g, &c),
            Err(Error::NonCanonical(_))
        ));
    }

    #[test]
    fn adjacent_type_b_is_not_canonical() {
        use VertexSolutionKind::*;
        let g = k4();
        let c = assemble_clustering(&g, &[TypeB, TypeB, TypeA, TypeA]).unwrap();
        assert_eq!(classify_vertex_solution(&g, &c, 0), TypeB);
        assert!(matches!(
            clustering_to_cover(&g, &c),
            Err(Error::NonCanonical(_))
        ));
    }

    #[test]
    fn isolated_blocks_by_oracle() {
        let g = k4();
        let r0 = brute_force_min(&g.sub_table(&g.vertex_block(0)).unwrap(), 3, None).unwrap();
        assert_eq!(r0.cost, 9);
        let x = brute_force_min(&g.sub_table(&g.x_rows).unwrap(), 3, None).unwrap();
        assert_eq!(x.cost, 9);
    }
}
