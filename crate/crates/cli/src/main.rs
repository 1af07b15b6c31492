//! `lgfib`: project, invert, verify, trace and scan the multicomplex rotor
//! reduction from the command line.
//!
//! Batch commands read CSV records (an optional header row is detected and
//! skipped), write CSV or JSON with full double precision, and flag
//! degenerate rows in a status column instead of aborting the run.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 configuration error.

mod commands;
mod records;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "lgfib", version, about = "Almost-invertible sphere reduction pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Project records of sphere angles (2^n - 1 columns) or sphere
    /// coordinates (2^n columns) onto the reduced sphere in R^(n+1)
    Project {
        #[arg(long, value_parser = clap::value_parser!(usize))]
        order: usize,
        /// Absolute tolerance for unit checks and kernel proximity
        #[arg(long, default_value_t = lgfib_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Input path; stdin when omitted
        input: Option<PathBuf>,
    },
    /// Recover rotor angles from records of n+1 projected coordinates
    Invert {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = lgfib_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Run the property suites and emit a machine-readable report
    Verify {
        /// Restrict the sweep to one order; default sweeps 2..=6
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = lgfib_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draws per suite per order
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the parametric curve theta_2 = a * theta_1, projected and plain
    Curve {
        /// Angle multiplier
        #[arg(long)]
        a: u32,
        /// Sample count over the full turn
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Grid-scan the inner-product difference function
    Scan {
        #[arg(long)]
        order: usize,
        /// Samples per angle; the grid has resolution^(2n) cells
        #[arg(long)]
        resolution: usize,
        #[arg(long, default_value_t = lgfib_core::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Failures carrying their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or unusable input data (exit 2).
    Input(String),
    /// Unusable configuration (exit 3).
    Config(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Config(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(format!("i/o error: {err}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let kind = err.kind();
            let _ = err.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            };
        }
    };

    let outcome = match cli.command {
        Command::Project {
            order,
            tol,
            format,
            output,
            input,
        } => commands::project(order, tol, format, output, input),
        Command::Invert {
            order,
            tol,
            format,
            output,
            input,
        } => commands::invert(order, tol, format, output, input),
        Command::Verify {
            order,
            tol,
            seed,
            samples,
            format,
            output,
        } => commands::verify(order, tol, seed, samples, format, output),
        Command::Curve {
            a,
            samples,
            format,
            output,
        } => commands::curve(a, samples, format, output),
        Command::Scan {
            order,
            resolution,
            tol,
            format,
            output,
        } => commands::scan(order, resolution, tol, format, output),
    };

    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("lgfib: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
