//! `isoperturb`: diagonal-perturbation graph isomorphism testing.
//!
//! Exit codes for `test` and `trace`: 0 isomorphic, 1 not isomorphic (or
//! not reconstructible), 2 usage or input error. `hunt` exits 1 when any
//! engine/oracle disagreement is found.

mod commands;
mod io;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "isoperturb", version, about = "Graph isomorphism testing by diagonal perturbation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two graph files are isomorphic.
    Test(TestArgs),
    /// Decide isomorphism and stream the full per-iteration trace.
    Trace(TestArgs),
    /// Generate graphs or permuted pairs.
    Gen(GenArgs),
    /// Cross-check the engine against the brute-force oracle on seeded
    /// random pairs, hunting for counterexamples.
    Hunt(HuntArgs),
    /// Timing table over a graph family; emits CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Bigfloat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EpsArg {
    Adaptive,
    /// The fixed 0.1, 0.2, ... demonstration schedule.
    Paper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Human,
    JsonLines,
}

#[derive(Args, Clone)]
struct RunFlags {
    /// Scalar backend.
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Perturbation schedule.
    #[arg(long, value_enum, default_value = "adaptive")]
    eps: EpsArg,
    /// Mantissa width override for the bigfloat backend.
    #[arg(long)]
    mantissa_bits: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in structured output (timings make the
    /// output non-reproducible byte-for-byte).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct TestArgs {
    /// First graph (.el or .g6).
    file_a: PathBuf,
    /// Second graph (.el or .g6).
    file_b: PathBuf,
    #[command(flatten)]
    flags: RunFlags,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Complete,
    Gnp,
    Torus,
    /// A base graph plus a seeded random relabeling of it.
    Pair,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseArg {
    Complete,
    Gnp,
    Torus,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Base family for --kind pair.
    #[arg(long, value_enum, default_value = "gnp")]
    base: BaseArg,
    /// Vertex count (complete, gnp).
    #[arg(long)]
    n: Option<u32>,
    /// Edge probability (gnp).
    #[arg(long)]
    prob: Option<f64>,
    /// Torus rows.
    #[arg(long)]
    rows: Option<u32>,
    /// Torus columns.
    #[arg(long)]
    cols: Option<u32>,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Output path (.el or .g6). For pairs this is a prefix; the pair is
    /// written as PREFIX.a.EXT and PREFIX.b.EXT. Single graphs print to
    /// stdout in edge-list form when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HuntArgs {
    /// Vertex count of generated pairs (oracle cap: 10).
    #[arg(long, default_value = "7")]
    n: u32,
    /// Number of pairs.
    #[arg(long, default_value = "100")]
    count: u32,
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Family of the generated pairs.
    #[arg(long, value_enum, default_value = "gnp")]
    family: BaseArg,
    /// Where counterexample pairs are dumped.
    #[arg(long, default_value = ".")]
    dump_dir: PathBuf,
    #[command(flatten)]
    flags: RunFlags,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts; torus sizes must be perfect squares.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u32>,
    #[arg(long, value_enum, default_value = "torus")]
    family: BaseArg,
    #[arg(long, default_value = "0")]
    seed: u64,
    #[command(flatten)]
    flags: RunFlags,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ISO_PERTURB_LOG")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Test(args) => commands::run_test(&args, false),
        Command::Trace(args) => commands::run_test(&args, true),
        Command::Gen(args) => commands::run_gen(&args),
        Command::Hunt(args) => commands::run_hunt(&args),
        Command::Bench(args) => commands::run_bench(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
