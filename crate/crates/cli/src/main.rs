mod anonymize;
mod gadget;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit status when a requested budget cannot be met.
pub const EXIT_BUDGET: u8 = 2;
/// Exit status when the self-test finds a mismatch.
pub const EXIT_SELFTEST: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kanon",
    version,
    about = "Exact k-anonymity by entry suppression"
)]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, env = "KANON_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Suppress a minimum number of entries so that every row has k - 1 twins.
    Anonymize(AnonymizeArgs),
    /// Build a hardness gadget from a graph, optionally certifying a solution.
    Gadget {
        #[command(subcommand)]
        kind: GadgetKind,
    },
    /// Cross-check the solver against the brute-force oracle on random tables.
    Selftest(SelftestArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Fpt,
    Brute,
    Auto,
}

#[derive(clap::Args, Debug)]
pub struct AnonymizeArgs {
    /// Input CSV file (`-` for stdin).
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Fail with exit status 2 unless at most this many entries are suppressed.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    pub algorithm: Algorithm,
    /// Treat the first record as a header.
    #[arg(long)]
    pub header: bool,
    /// Output CSV (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report destination.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Row cap for the brute-force solver.
    #[arg(long)]
    pub oracle_limit: Option<usize>,
    /// Include wall time in the report (makes it run-dependent).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum GadgetKind {
    /// Clique gadget with k = 2h² and budget 6h³.
    Clique {
        graph: PathBuf,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        common: GadgetArgs,
    },
    /// Vertex-cover gadget on a cubic graph (three columns, k = 3).
    Vcc {
        graph: PathBuf,
        #[command(flatten)]
        common: GadgetArgs,
    },
}

#[derive(clap::Args, Debug)]
pub struct GadgetArgs {
    /// Gadget table CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Metadata JSON: k, target cost and row provenance.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// File listing a clique or vertex cover (whitespace separated vertices).
    #[arg(long)]
    pub certify: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let result = match cli.command {
        Command::Anonymize(args) => anonymize::run(&args),
        Command::Gadget { kind } => gadget::run(&kind),
        Command::Selftest(args) => selftest::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Writes `text` to `path`, or to stdout when `path` is absent.
pub fn emit(path: Option<&PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    use anyhow::Context;
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(bytes).context("writing stdout"),
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report serializes");
    out.push(b'\n');
    out
}
