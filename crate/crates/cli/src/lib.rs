//! Batch front end: instance I/O, reductions, checkers, fuzzing and reports.

pub mod commands;
pub mod doc;
pub mod error;
pub mod fuzz;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sspforge::reductions::BetaChoice;
use sspforge::ssp::MAX_UNIVERSE_ENV;
use sspforge::{DistanceMeasure, Limits, SspError};

pub use doc::InstanceDocument;
pub use error::{CliError, Result};
pub use report::RunReport;

/// Universe bound when neither the flag nor the environment sets one.
pub const DEFAULT_MAX_UNIVERSE: usize = 1 << 17;

#[derive(Debug, Parser)]
#[command(name = "sspforge", version, about = "Build and check solution-preserving reductions")]
pub struct Cli {
    /// Largest universe any enumeration may touch [env: SSPFORGE_MAX_UNIVERSE]
    #[arg(long, global = true)]
    pub max_universe: Option<usize>,
    /// Most solutions any enumeration may collect
    #[arg(long, global = true)]
    pub max_solutions: Option<usize>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,
    /// Suppress the human summary on stderr
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a reduction edge or chain to an instance
    Reduce(ReduceArgs),
    /// Run the checkers on a stored artifact
    Check(CheckArgs),
    /// Evaluate a nominal, robust or quantified instance
    Solve(SolveArgs),
    /// Random build-and-check runs over a set of edges
    Fuzz(FuzzArgs),
    /// Summarize stored reports, artifacts and instances
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Single edge such as `3sat-vc`
    #[arg(long, conflicts_with = "chain", required_unless_present = "chain")]
    pub edge: Option<String>,
    /// Comma-separated edges in application order
    #[arg(long)]
    pub chain: Option<String>,
    /// Blown-up literals: bare variables (`x3`, `3`) add both literals,
    /// signed ones (`-3`, `~x3`) add one
    #[arg(long, default_value = "")]
    pub lb: String,
    #[arg(long, default_value = "hamming", value_parser = parse_measure)]
    pub measure: DistanceMeasure,
    /// `table`, `adjusted` or a fixed number
    #[arg(long, default_value = "adjusted", value_parser = parse_beta)]
    pub beta: BetaChoice,
    /// Terminal pairs for the kDDP target
    #[arg(long, default_value_t = 3)]
    pub ddp_pairs: usize,
    /// Target instance document
    #[arg(long, short)]
    pub output: PathBuf,
    /// Artifact file; defaults to the output path with `.artifact.json`
    #[arg(long)]
    pub artifact: Option<PathBuf>,
    /// JSON instance document or DIMACS CNF
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Ssp,
    Blowup,
    Preserving,
    All,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub artifact: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub property: Property,
    /// Measure for the blow-up check; defaults to the one the artifact was built for
    #[arg(long, value_parser = parse_measure)]
    pub measure: Option<DistanceMeasure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Nominal,
    CombRr,
    CostRr,
    Radjsat,
    EaeSat,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub mode: SolveMode,
    pub input: PathBuf,
    /// For `radjsat`: also run the chain pipeline and compare answers
    #[arg(long)]
    pub pipeline: Option<String>,
    #[arg(long, default_value = "hamming", value_parser = parse_measure)]
    pub measure: DistanceMeasure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// Replace every blow-up factor by zero before checking
    BetaZero,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    /// `all`, or a comma list of edges plus `radjsat` and `comb-cost`
    #[arg(long, default_value = "all")]
    pub edges: String,
    /// Total number of cases, spread round-robin over the edges
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub max_vars: usize,
    #[arg(long, default_value_t = 4)]
    pub max_clauses: usize,
    /// Bound on the size of generated sources of preserving edges
    #[arg(long, default_value_t = 8)]
    pub max_source: usize,
    /// Where the replay file of a failing case goes
    #[arg(long, default_value = ".")]
    pub replay_dir: PathBuf,
    #[arg(long, value_enum)]
    pub inject: Option<Mutation>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Run reports, artifacts or instance documents
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
}

fn parse_measure(s: &str) -> std::result::Result<DistanceMeasure, String> {
    s.parse().map_err(|e: SspError| e.to_string())
}

fn parse_beta(s: &str) -> std::result::Result<BetaChoice, String> {
    match s {
        "table" => Ok(BetaChoice::Table),
        "adjusted" => Ok(BetaChoice::Adjusted),
        n => n.parse().map(BetaChoice::Fixed).map_err(|_| format!("expected table, adjusted or a number, got `{n}`")),
    }
}

impl Cli {
    /// Flags win over the environment, which wins over the defaults.
    pub fn limits(&self) -> Result<Limits> {
        let mut l = Limits { max_universe: DEFAULT_MAX_UNIVERSE, ..Limits::default() };
        if let Ok(v) = std::env::var(MAX_UNIVERSE_ENV) {
            l.max_universe = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_UNIVERSE_ENV}={v} is not an integer")))?;
        }
        if let Some(u) = self.max_universe {
            l.max_universe = u;
        }
        if let Some(s) = self.max_solutions {
            l.max_solutions = s;
        }
        Ok(l)
    }
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let limits = cli.limits()?;
    let started = std::time::Instant::now();
    let mut report = match &cli.command {
        Command::Reduce(a) => commands::reduce(a)?,
        Command::Check(a) => commands::check(a, &limits)?,
        Command::Solve(a) => commands::solve(a, &limits)?,
        Command::Fuzz(a) => return fuzz::fuzz(a, &limits),
        Command::Report(a) => commands::report(a)?,
    };
    report.set_elapsed(started.elapsed());
    Ok(report)
}
