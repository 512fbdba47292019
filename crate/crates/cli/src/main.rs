//! `intcells`: generate instances, compute cell/box/dimension quantities,
//! verify claims and sweep constants, with JSON or CSV reports.
//!
//! Exit codes: 0 computed or passed, 1 claim violated or oracle
//! disagreement, 2 input or usage error.

mod commands;
mod io;
mod oracle;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::io::Format;

#[derive(Debug)]
pub enum CliError {
    /// Bad input file, parameter or precondition.
    Input(String),
}

impl From<intcells_core::Error> for CliError {
    fn from(e: intcells_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "intcells", version, about = "Integer cells, coordinate convexity and coordinate volume ratios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input instance (point set, polytope, oracle body or generator spec).
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for generators, translates and Monte Carlo.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Constants configuration (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub cfg: Option<PathBuf>,
    /// Recompute through the brute-force oracles and require agreement.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Relative tolerance of floating-point comparisons.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Claim or generator parameter.
    #[arg(long = "param", global = true, value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// One-based coordinates, comma separated (e.g. `1,3`).
    #[arg(long, global = true, value_name = "I")]
    pub proj: Option<String>,
    /// Directory of polytope files for `sweep`.
    #[arg(long, global = true, value_name = "DIR")]
    pub corpus: Option<PathBuf>,
    /// Scale of the combinatorial dimension (`p/q`, default 1).
    #[arg(long, global = true, value_name = "T")]
    pub t: Option<String>,
    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Generate an instance of a family (`--param key=value`, `--seed`).
    Gen { family: String },
    /// Integer cells in a projection (`--proj`), or the best projection.
    Cells,
    /// Integer boxes in a projection (`--proj`), or the total box content.
    Boxes,
    /// Cell content of a point set.
    Content,
    /// VC, Natarajan or combinatorial dimension (`--t`).
    Dim {
        #[arg(value_enum)]
        kind: DimKind,
    },
    /// Exact polytope volume, or a Monte Carlo estimate for oracle bodies.
    Volume,
    /// Coordinate projection onto `--proj`.
    Project,
    /// Section by the coordinate subspace spanned by `--proj`.
    Section,
    /// Polar body.
    Polar,
    /// Check a claim on `--in`.
    Verify { claim: String },
    /// Measure the extremal constant of a claim over `--corpus`.
    Sweep { claim: String },
    /// Summarize report files (or directories of them).
    Report { files: Vec<PathBuf> },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimKind {
    Vc,
    Natarajan,
    Comb,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli, &argv) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
