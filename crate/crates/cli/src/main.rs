//! `corepeel` command-line front end.
//!
//! Exit codes: 0 on success, 1 on data errors (I/O, parse, planting),
//! 2 on usage errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "corepeel", version, about = "Dense community detection with Core & Peel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Node, arc and edge counts, degree and core maxima.
    Stats {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Detect disjoint dense communities.
    Run(RunArgs),
    /// Planted-community precision/recall benchmark.
    Bench(BenchArgs),
}

#[derive(clap::Args, Debug)]
pub struct DetectArgs {
    /// Minimum density of a community, in (0, 1].
    #[arg(long, value_parser = parse_fraction)]
    pub density: f64,
    /// Candidate neighbourhood radius.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub radius: u8,
    /// Prefilter threshold; defaults to half the density.
    #[arg(long, value_parser = parse_fraction)]
    pub delta_low: Option<f64>,
    /// Compare densities as exact rationals instead of floats.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Leave timings out so repeated runs produce identical reports.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(clap::Args, Debug)]
pub struct RunArgs {
    pub input: PathBuf,
    /// Minimum community size (at least 2).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub min_size: u64,
    #[command(flatten)]
    pub detect: DetectArgs,
    /// Merge communities whose union still qualifies.
    #[arg(long)]
    pub merge: bool,
}

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub detect: DetectArgs,
    /// Seed of the first trial; trial i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Fraction of nodes that planted communities may occupy.
    #[arg(long, default_value_t = corepeel::bench::DEFAULT_BUDGET_FRACTION, value_parser = parse_fraction)]
    pub budget_fraction: f64,
    /// Override the planted community average degree.
    #[arg(long)]
    pub target_degree: Option<usize>,
    /// Override the planted community size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub plant_size: Option<u64>,
    /// Give every planted member at least density * (size - 1) neighbours
    /// inside its community.
    #[arg(long)]
    pub quasi_clique: bool,
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x <= 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is not in (0, 1]"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Stats { input, format } => commands::stats(&input, format),
        Command::Run(args) => commands::run(&args),
        Command::Bench(args) => commands::bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<corepeel::Error>() {
                Some(corepeel::Error::InvalidParameter(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
