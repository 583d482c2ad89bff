use std::collections::BTreeSet;

use kanon::oracle::brute_force_min;
use kanon::reductions::{
    build_apx_gadget, build_clique_gadget, clique_to_clustering, clustering_to_clique,
    clustering_to_cover, cover_to_clustering, InputGraph,
};

/// The triangular prism: cubic on six vertices.
fn prism() -> InputGraph {
    InputGraph::parse("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n0 3\n1 4\n2 5\n").unwrap()
}

#[test]
fn prism_covers_round_trip() {
    let g = prism();
    let gad = build_apx_gadget(&g).unwrap();
    assert_eq!(gad.row_count(), 9 * 6 + 7 * 9 + 3);
    let mut covers = 0;
    for mask in 0u32..64 {
        let cover: BTreeSet<usize> = (0..6).filter(|v| mask >> v & 1 == 1).collect();
        match cover_to_clustering(&gad, &cover) {
            Ok(c) => {
                covers += 1;
                assert_eq!(c.cost(), (6 * 6 + 3 * cover.len() + 11 * 9 + 9) as u64);
                assert_eq!(clustering_to_cover(&gad, &c).unwrap(), cover);
            }
            Err(_) => assert!(!g.is_vertex_cover(&cover)),
        }
    }
    assert!(covers > 0);
}

#[test]
fn clique_round_trip_on_k4() {
    let g = InputGraph::complete(4);
    for h in 2..=4 {
        let gad = build_clique_gadget(&g, h).unwrap();
        let clique: BTreeSet<usize> = (0..h).collect();
        let c = clique_to_clustering(&gad, &clique).unwrap();
        assert_eq!(c.cost(), 6 * (h as u64).pow(3));
        assert!(c.is_k_feasible(gad.k));
        assert_eq!(clustering_to_clique(&gad, &c).unwrap(), clique);
    }
}

#[test]
fn prism_blocks_by_oracle() {
    let gad = build_apx_gadget(&prism()).unwrap();
    for v in 0..6 {
        let t = gad.sub_table(&gad.vertex_block(v)).unwrap();
        assert_eq!(brute_force_min(&t, 3, None).unwrap().cost, 9);
    }
}
