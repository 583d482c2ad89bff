use anyhow::Result;
use kanon::fpt::{evaluate, solve_budget, solve_min, CandidateSet, Fault, SolverOptions};
use kanon::instances::{figure_one, random_instance, RandomInstance, RandomTableSpec};
use kanon::oracle::brute_force_min;
use kanon::table::{group_rows, Table};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{SelftestArgs, EXIT_SELFTEST};

fn check_figure_one(opts: &SolverOptions) -> Result<(), String> {
    let t = figure_one();
    let r = solve_min(&t, 2, opts).map_err(|e| e.to_string())?;
    if r.cost != 4 || r.clustering.partition() != vec![vec![0, 1, 2], vec![3, 4], vec![5, 6]] {
        return Err(format!(
            "cost {}, blocks {:?}",
            r.cost,
            r.clustering.partition()
        ));
    }
    let v = |s: &str| {
        t.parse_vector(&s.chars().map(String::from).collect::<Vec<_>>())
            .unwrap()
    };
    let set = CandidateSet::new(&t, 2, vec![v("aaa"), v("a*a"), v("bb*")])
        .map_err(|e| format!("{e:?}"))?;
    let ev = evaluate(&t, 2, &group_rows(&t), &set, opts).map_err(|e| e.to_string())?;
    if (ev.weights.total, ev.matching_weight(), ev.threshold_term) != (18, 131, 135) {
        return Err(format!(
            "W = {}, matching weight {}, threshold term {}",
            ev.weights.total,
            ev.matching_weight(),
            ev.threshold_term
        ));
    }
    Ok(())
}

fn check_instance(inst: &RandomInstance, opts: &SolverOptions) -> Result<(), String> {
    let (t, k) = (&inst.table, inst.k);
    let r = solve_min(t, k, opts).map_err(|e| e.to_string())?;
    let o = brute_force_min(t, k, None).map_err(|e| e.to_string())?;
    if r.cost != o.cost {
        return Err(format!("solver {} vs oracle {}", r.cost, o.cost));
    }
    if r.stats.completeness_violations > 0 {
        return Err("a maximum matching was not complete".into());
    }
    if solve_budget(t, k, o.cost, opts)
        .map_err(|e| e.to_string())?
        .is_none()
    {
        return Err(format!("budget {} rejected", o.cost));
    }
    if o.cost > 0
        && solve_budget(t, k, o.cost - 1, opts)
            .map_err(|e| e.to_string())?
            .is_some()
    {
        return Err(format!("budget {} accepted", o.cost - 1));
    }
    Ok(())
}

fn serialize(t: &Table) -> String {
    (0..t.n())
        .map(|r| t.row_text(r).join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn run(args: &SelftestArgs) -> Result<u8> {
    let opts = SolverOptions {
        fault: args.inject_fault.then_some(Fault::DropVectorWeightOffset),
    };
    let mut failed = false;
    match check_figure_one(&opts) {
        Ok(()) => println!("worked example: ok"),
        Err(e) => {
            failed = true;
            println!("worked example: FAILED: {e}");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let instances: Vec<RandomInstance> = (0..args.trials)
        .map(|_| random_instance(&mut rng, &RandomTableSpec::default()))
        .collect();
    let outcomes: Vec<Result<(), String>> = instances
        .par_iter()
        .map(|i| check_instance(i, &opts))
        .collect();
    let failures: Vec<(usize, &String)> = outcomes
        .iter()
        .enumerate()
        .filter_map(|(i, o)| o.as_ref().err().map(|e| (i, e)))
        .collect();
    println!(
        "seed {}: {} of {} random instances agree with the oracle",
        args.seed,
        args.trials - failures.len(),
        args.trials
    );
    if let Some(&(i, e)) = failures.first() {
        failed = true;
        let inst = &instances[i];
        eprintln!(
            "trial {i} failed: {e}\nk = {}\n{}",
            inst.k,
            serialize(&inst.table)
        );
    }
    Ok(if failed { EXIT_SELFTEST } else { 0 })
}
