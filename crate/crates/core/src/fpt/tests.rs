use super::*;
use crate::instances::{figure_one, random_instance, RandomTableSpec};
use crate::oracle::brute_force_min;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vec_of(t: &Table, s: &str) -> ResolutionVector {
    t.parse_vector(&s.chars().map(String::from).collect::<Vec<_>>())
        .unwrap()
}

fn figure_one_evaluation() -> (Table, Evaluation) {
    let t = figure_one();
    let set = CandidateSet::new(
        &t,
        2,
        vec![vec_of(&t, "aaa"), vec_of(&t, "a*a"), vec_of(&t, "bb*")],
    )
    .unwrap();
    let ev = evaluate(&t, 2, &group_rows(&t), &set, &SolverOptions::default()).unwrap();
    (t, ev)
}

#[test]
fn figure_one_weights_and_graph() {
    let (_, ev) = figure_one_evaluation();
    assert_eq!(ev.weights.row, vec![3, 3, 3, 3, 2, 2, 2]);
    assert_eq!(ev.weights.total, 18);
    assert_eq!(ev.weights.vector, vec![22, 21, 21]);
    assert_eq!(feasibility_threshold(&ev.weights, 2), 128);
    assert_eq!(ev.partition.dist, vec![4, 5, 6]);
    assert_eq!(ev.partition.safe.len(), 1);
    assert_eq!(ev.graph.left.len(), 7);
    assert_eq!(ev.graph.slots().len(), 6);
    assert_eq!(ev.graph.rest_left(), 5);
}

#[test]
fn figure_one_matching() {
    let (t, ev) = figure_one_evaluation();
    assert!(ev.feasible);
    assert!(ev.graph.is_complete(&ev.matching));
    assert_eq!(ev.matching_weight(), 131);
    assert_eq!(ev.threshold_term, 19 * 2 * 3 + 3 * 7);
    assert_eq!(ev.matching_cost(), Some(4));
    let ex = ev.extraction.unwrap();
    assert_eq!(
        ex.clustering.partition(),
        vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]]
    );
    assert_eq!(ex.clustering.cost(), 4);
    assert_eq!(t.suppressed_records(&ex.clustering)[4], vec!["a", "*", "a"]);
}

#[test]
fn figure_one_solvers() {
    let t = figure_one();
    let opts = SolverOptions::default();
    let r = solve_min(&t, 2, &opts).unwrap();
    assert_eq!(r.cost, 4);
    assert_eq!(r.matching_cost, 4);
    let mut sizes = r.clustering.block_sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 2, 3]);
    assert_eq!(r.stats.completeness_violations, 0);

    let b = solve_budget(&t, 2, 4, &opts).unwrap().unwrap();
    assert!(b.cost <= 4);
    assert!(solve_budget(&t, 2, 3, &opts).unwrap().is_none());
}

#[test]
fn anonymous_tables_cost_nothing() {
    let t = Table::from_records(vec![vec!["p", "q"]; 6]).unwrap();
    for k in 1..=6 {
        let r = solve_min(&t, k, &SolverOptions::default()).unwrap();
        assert_eq!(r.cost, 0);
        assert_eq!(r.clustering.partition(), vec![(0..6).collect::<Vec<_>>()]);
        assert!(solve_budget(&t, k, 0, &SolverOptions::default())
            .unwrap()
            .is_some());
    }
    let t = Table::from_records(vec![vec!["a"], vec!["a"], vec!["b"], vec!["b"]]).unwrap();
    let r = solve_budget(&t, 2, 0, &SolverOptions::default())
        .unwrap()
        .unwrap();
    assert_eq!(r.clustering.partition(), vec![vec![0, 1], vec![2, 3]]);
}

#[test]
fn bad_k() {
    let t = figure_one();
    assert!(matches!(
        solve_min(&t, 0, &SolverOptions::default()),
        Err(Error::InvalidK { .. })
    ));
    assert!(matches!(
        solve_min(&t, 8, &SolverOptions::default()),
        Err(Error::InvalidK { .. })
    ));
    assert!(solve_min(&t, 7, &SolverOptions::default()).is_ok());
}

#[test]
fn all_star_vector_uses_zero_weight_edges() {
    // Pairwise different in every column: only `**` gathers k rows.
    let t = Table::from_records(vec![vec!["a", "x"], vec!["b", "y"], vec!["c", "z"]]).unwrap();
    let r = solve_min(&t, 2, &SolverOptions::default()).unwrap();
    assert_eq!(r.cost, 6);
    assert_eq!(r.stats.completeness_violations, 0);
}

#[test]
fn fault_breaks_the_weight_identity() {
    let t = figure_one();
    let opts = SolverOptions {
        fault: Some(Fault::DropVectorWeightOffset),
    };
    assert!(matches!(solve_min(&t, 2, &opts), Err(Error::Internal(_))));
}

#[test]
fn matches_oracle_on_small_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let inst = random_instance(&mut rng, &RandomTableSpec::default());
        let r = solve_min(&inst.table, inst.k, &SolverOptions::default()).unwrap();
        let o = brute_force_min(&inst.table, inst.k, None).unwrap();
        assert_eq!(r.cost, o.cost, "{:?}", inst.table.rows());
        assert!(r.clustering.is_k_feasible(inst.k));
    }
}
