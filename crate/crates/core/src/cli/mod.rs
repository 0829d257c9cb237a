//! Command-line front end: `gen`, `solve`, `verify`, `bench`.
//!
//! Exit codes: 0 success, 1 verification found hard failures, 2 unreadable
//! input or bad usage, 3 contract violation (duplicate values without
//! `--break-ties-by-index`, wrong problem for the instance, oversized light
//! color).

pub mod commands;
pub mod format;
pub mod gen;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::solver::{Problem, SolverConfig, Techniques};
use crate::TieMode;
pub use gen::{generate, Distribution, GenParams, QueryKind};

#[derive(Debug, Parser)]
#[command(name = "range-lis", version, about = "Batch range LIS queries with a brute-force verifier")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random instance file.
    Gen(GenArgs),
    /// Answer every query of an instance file.
    Solve(SolveArgs),
    /// Compare the solver against the brute-force oracle over several seeds.
    Verify(VerifyArgs),
    /// Print build/query timings as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "mixed")]
    pub query_kind: QueryKind,
    /// Number of colors; omit for an uncolored instance.
    #[arg(long)]
    pub colors: Option<usize>,
    #[arg(long, value_enum, default_value = "uniform")]
    pub distribution: Distribution,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout if omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value = "2d")]
    pub problem: String,
    #[arg(long)]
    pub tau: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, default_value_t = crate::large_lis::DEFAULT_C)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated subset of small,large,light,oracle (or `all`).
    #[arg(long, default_value = "all")]
    pub technique: String,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Accept equal values, ordering them by index.
    #[arg(long)]
    pub break_ties_by_index: bool,
}

impl SolverArgs {
    pub fn problem(&self) -> crate::Result<Problem> {
        self.problem.parse()
    }

    pub fn config(&self) -> crate::Result<SolverConfig> {
        Ok(SolverConfig {
            tau: self.tau,
            delta: self.delta,
            c: self.c,
            seed: self.seed,
            techniques: self.technique.parse::<Techniques>()?,
            workers: self.workers,
        })
    }

    pub fn ties(&self) -> TieMode {
        if self.break_ties_by_index {
            TieMode::BreakByIndex
        } else {
            TieMode::Reject
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output path for result lines; stdout if omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "4096,8192,16384")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value = "2d")]
    pub problem: String,
    /// Queries per instance; defaults to n.
    #[arg(long)]
    pub m: Option<usize>,
    /// Colors for colored problems; defaults to ceil(sqrt(n)).
    #[arg(long)]
    pub colors: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    #[arg(long, default_value_t = crate::large_lis::DEFAULT_C)]
    pub c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DuplicateValue { .. } | Error::ContractViolation(_) => 3,
        Error::InvalidInstance(_) | Error::InvalidQuery { .. } | Error::Parse(_) | Error::Io(_) => 2,
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a).map(|_| 0),
        Command::Solve(a) => commands::solve(&a).map(|_| 0),
        Command::Verify(a) => commands::verify(&a).map(|s| if s.hard() > 0 { 1 } else { 0 }),
        Command::Bench(a) => commands::bench(&a).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
