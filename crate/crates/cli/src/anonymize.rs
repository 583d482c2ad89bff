use std::fs::File;
use std::io::Read;

use anyhow::{bail, Context, Result};
use kanon::fpt::{solve_budget_with_stats, solve_min, SolveStats, SolverOptions};
use kanon::io::{read_csv, write_suppressed};
use kanon::oracle::brute_force_min;
use kanon::table::{Clustering, Table};
use serde::Serialize;

use crate::{emit, to_json, Algorithm, AnonymizeArgs, EXIT_BUDGET};

/// Tables with at most this many rows go to the oracle under `auto` when
/// the candidate space is large.
const AUTO_BRUTE_ROWS: usize = 10;
const AUTO_BRUTE_SPACE: u64 = 1 << 16;

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    rows: usize,
    columns: usize,
    alphabet_sizes: Vec<usize>,
    k: usize,
    budget: Option<u64>,
    algorithm: &'static str,
    /// `false` only when a budget was given and cannot be met.
    solved: bool,
    cost: Option<u64>,
    block_sizes: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    suppressed: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fpt: Option<FptStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partitions_examined: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct FptStats {
    candidate_space: u64,
    candidate_vectors: usize,
    sets_examined: u64,
    sets_pruned: u64,
    sets_evaluated: u64,
    matching_cost: Option<u64>,
}

impl FptStats {
    fn new(stats: &SolveStats, matching_cost: Option<u64>) -> FptStats {
        FptStats {
            candidate_space: stats.full_space,
            candidate_vectors: stats.candidate_vectors,
            sets_examined: stats.examined,
            sets_pruned: stats.pruned(),
            sets_evaluated: stats.evaluated,
            matching_cost,
        }
    }
}

pub fn choose(table: &Table, requested: Algorithm) -> Algorithm {
    match requested {
        Algorithm::Auto
            if table.n() <= AUTO_BRUTE_ROWS && table.candidate_space_size() > AUTO_BRUTE_SPACE =>
        {
            Algorithm::Brute
        }
        Algorithm::Auto => Algorithm::Fpt,
        other => other,
    }
}

pub fn run(args: &AnonymizeArgs) -> Result<u8> {
    let reader: Box<dyn Read> = if args.input.as_os_str() == "-" {
        Box::new(std::io::stdin())
    } else {
        Box::new(
            File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?,
        )
    };
    let csv = read_csv(reader, args.header)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let table = &csv.table;
    if args.k == 0 || args.k > table.n() {
        bail!(
            "k must be between 1 and the row count {}, got {}",
            table.n(),
            args.k
        );
    }

    let started = std::time::Instant::now();
    let algorithm = choose(table, args.algorithm);
    let opts = SolverOptions::default();
    let (clustering, fpt, partitions): (Option<Clustering>, Option<FptStats>, Option<u64>) =
        match algorithm {
            Algorithm::Fpt => match args.budget {
                Some(e) => {
                    let (report, stats) = solve_budget_with_stats(table, args.k, e, &opts)?;
                    let mc = report.as_ref().map(|r| r.matching_cost);
                    (
                        report.map(|r| r.clustering),
                        Some(FptStats::new(&stats, mc)),
                        None,
                    )
                }
                None => {
                    let r = solve_min(table, args.k, &opts)?;
                    let stats = FptStats::new(&r.stats, Some(r.matching_cost));
                    (Some(r.clustering), Some(stats), None)
                }
            },
            Algorithm::Brute | Algorithm::Auto => {
                let limit = args
                    .oracle_limit
                    .or((args.algorithm == Algorithm::Auto).then_some(AUTO_BRUTE_ROWS));
                let r = brute_force_min(table, args.k, limit)?;
                let within = args.budget.is_none_or(|e| r.cost <= e);
                (
                    within.then_some(r.clustering),
                    None,
                    Some(r.partitions_examined),
                )
            }
        };
    let elapsed = started.elapsed();

    let report = Report {
        schema_version: 1,
        rows: table.n(),
        columns: table.m(),
        alphabet_sizes: table.alphabet_sizes(),
        k: args.k,
        budget: args.budget,
        algorithm: if algorithm == Algorithm::Fpt {
            "fpt"
        } else {
            "brute"
        },
        solved: clustering.is_some(),
        cost: clustering.as_ref().map(Clustering::cost),
        block_sizes: clustering
            .as_ref()
            .map(Clustering::block_sizes)
            .unwrap_or_default(),
        blocks: clustering
            .as_ref()
            .map(Clustering::partition)
            .unwrap_or_default(),
        suppressed: clustering
            .as_ref()
            .map(Clustering::suppressed_cells)
            .unwrap_or_default(),
        fpt,
        partitions_examined: partitions,
        elapsed_ms: args.timings.then_some(elapsed.as_secs_f64() * 1e3),
    };
    if let Some(path) = &args.report {
        emit(Some(path), &to_json(&report))?;
    }

    let Some(clustering) = clustering else {
        eprintln!(
            "no {}-anonymous suppression within budget {}",
            args.k,
            args.budget.unwrap_or_default()
        );
        return Ok(EXIT_BUDGET);
    };
    let mut out = Vec::new();
    write_suppressed(&mut out, csv.header.as_deref(), table, &clustering)?;
    emit(args.out.as_ref(), &out)?;
    eprintln!(
        "{} rows, k = {}: suppressed {} entries in {} blocks ({})",
        table.n(),
        args.k,
        clustering.cost(),
        clustering.blocks().len(),
        report.algorithm
    );
    Ok(0)
}
