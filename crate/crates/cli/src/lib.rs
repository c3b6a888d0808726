//! Batch front end: diagram files in, line-oriented reports out.
//!
//! Exit codes: 0 when every verdict passes, 1 when some verdict fails, 2 for
//! unreadable or malformed input, 3 for validity-bound violations.

pub mod pipeline;
pub mod random;
pub mod report;
pub mod spec;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pipeline::{Check, Comparison, Construction};
use random::{Battery, Bounds};
use report::Report;
use spec::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("validity bound violated: {0}")]
    Bounds(String),
    #[error("validity bound violated: {0}")]
    Core(#[from] relnerve::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Bounds(_) | CliError::Core(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "relnerve",
    version,
    about = "Relative nerves, homotopy colimits and their certified comparisons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format; only `text` exists.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Diagram file.
    #[arg(long)]
    pub input: PathBuf,
    /// Truncation cap; overrides the file's `cap` line.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and report its sizes.
    Build {
        #[arg(value_enum)]
        construction: Construction,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run a certificate-producing check.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        input: InputArgs,
        /// Bound for lifting checks; defaults to the cap.
        #[arg(long)]
        ncap: Option<usize>,
    },
    /// Compare invariants of two constructions.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        /// Integral homology of the relative nerve against the bar construction.
        #[arg(long, group = "what")]
        homology: bool,
        /// Path components of the relative nerve against the bar construction.
        #[arg(long, group = "what")]
        pi0: bool,
        /// Homology of the bar construction on nerves against the nerve of the classical construction.
        #[arg(long, group = "what")]
        thomason: bool,
        /// Highest homology degree; defaults to cap - 1.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Seeded random diagrams through the invariant battery.
    RandomSuite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, default_value_t = 2)]
        max_arrows: usize,
        #[arg(long, default_value_t = 6)]
        max_cells: usize,
    },
}

pub fn load(input: &InputArgs) -> Result<spec::DiagramSpec, CliError> {
    let path = input.input.display().to_string();
    let text = std::fs::read_to_string(&input.input).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    spec::parse(&text, input.cap).map_err(|source| CliError::Parse { path, source })
}

/// Runs one command and returns its report.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Build {
            construction,
            input,
        } => pipeline::build(&load(input)?, *construction),
        Command::Verify { check, input, ncap } => pipeline::verify(&load(input)?, *check, *ncap),
        Command::Compare {
            input,
            homology: _,
            pi0,
            thomason,
            max_degree,
        } => {
            let what = match (pi0, thomason) {
                (true, _) => Comparison::Pi0,
                (_, true) => Comparison::Thomason,
                _ => Comparison::Homology,
            };
            pipeline::compare(&load(input)?, what, *max_degree)
        }
        Command::RandomSuite {
            seed,
            count,
            cap,
            max_objects,
            max_arrows,
            max_cells,
        } => {
            let bounds = Bounds {
                max_objects: *max_objects,
                max_arrows: *max_arrows,
                max_cells: *max_cells,
                cap: *cap,
            };
            random::random_suite(*seed, *count, bounds, Battery::full())
        }
    }
}

/// Runs the parsed command line, writes the report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(&cli.command) {
        Ok(report) => {
            let text = report.render();
            let code = if report.passed() { 0 } else { 1 };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
