//! `pentacc`: symmetric scans, interval certificates, region maps, tropical
//! table checks and residual evaluation from the command line.
//!
//! Exit codes: 0 success or certified, 1 input error, 2 undecided
//! certification, 3 empty result, 4 tropical check failed.

mod commands;
mod input;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pentacc::analysis::DEFAULT_TOL;
use pentacc::equations::Exponent;
use pentacc::geometry::Branch;
use pentacc::tropical::{RationalExponent, WeightVector};

#[derive(Parser)]
#[command(name = "pentacc", version, about = "Equilateral pentagon central configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
pub struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    UniqueRoot,
    NoCommonZero,
}

#[derive(Subcommand)]
enum Command {
    /// Isolate the symmetric solutions with positive masses on one branch.
    SymmetricScan {
        #[arg(long = "A", default_value = "2")]
        a: Exponent,
        #[arg(long, default_value = "A")]
        branch: Branch,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Interval certificate over a y4 window and an A range.
    Certify {
        #[arg(long, value_enum, default_value_t = Mode::UniqueRoot)]
        mode: Mode,
        #[arg(long, default_value = "A")]
        branch: Branch,
        /// Sign type (e.g. `A2`) or an explicit `lo,hi` range in y4.
        #[arg(long)]
        window: String,
        /// `lo,hi` range of exponents, or a single value.
        #[arg(long = "A")]
        a: String,
        /// Bisection depth cap (no-common-zero mode).
        #[arg(long)]
        max_depth: Option<u32>,
        /// Box budget (no-common-zero mode).
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Region verdicts on a grid of interior angles (degrees on input,
    /// radians in the CSV).
    RegionMap {
        #[arg(long = "A", default_value = "2")]
        a: Exponent,
        /// Cells per axis over (0°, 360°).
        #[arg(long, default_value_t = 180)]
        grid: usize,
        /// Classify a single `theta12,theta23` pair in degrees instead.
        #[arg(long)]
        at: Option<String>,
        /// Also write the region boundaries as SVG paths.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Check the tabulated rays and cones against the prevariety.
    TropicalVerify {
        /// Exact rational exponents, e.g. `3` or `5/2`; repeatable.
        #[arg(long = "A", default_values = ["3"])]
        a: Vec<RationalExponent>,
        /// Check one weight vector on `(r12, r13, r14, r24, r25, r35)` instead.
        #[arg(long, allow_hyphen_values = true)]
        ray: Option<WeightVector>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate every residual system on a configuration file.
    Evaluate {
        input: PathBuf,
        /// Overrides the exponent in the file (default 3).
        #[arg(long = "A")]
        a: Option<Exponent>,
        #[command(flatten)]
        output: Output,
    },
    /// SVG of the reduced function along both symmetric branches.
    Curves {
        #[arg(long = "A", default_value = "2")]
        a: Exponent,
        #[arg(long, default_value_t = 800)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_INPUT } else { commands::EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::SymmetricScan {
            a,
            branch,
            tol,
            output,
        } => commands::symmetric_scan(a, branch, tol, &output),
        Command::Certify {
            mode,
            branch,
            window,
            a,
            max_depth,
            budget,
            output,
        } => commands::certify(mode, branch, &window, &a, max_depth, budget, &output),
        Command::RegionMap {
            a,
            grid,
            at,
            svg,
            output,
        } => commands::region_map(a, grid, at.as_deref(), svg.as_deref(), &output),
        Command::TropicalVerify { a, ray, output } => commands::tropical_verify(&a, ray.as_ref(), &output),
        Command::Evaluate { input, a, output } => commands::evaluate(&input, a, &output),
        Command::Curves { a, grid, out } => commands::curves(a, grid, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", commands::error_json(&e));
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
