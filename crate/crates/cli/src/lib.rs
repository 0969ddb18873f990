//! Command-line front end: `eval` prints a single function value, `verify`
//! runs verification suites and writes a JSON, CSV or text report.
//!
//! Exit codes: 0 success (all suites pass), 1 some suite failed, 2 usage or
//! configuration error, 3 domain error in `eval`.

mod config;
mod eval;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{RunConfig, PRECISION_ENV};
pub use eval::{eval_function, EvalError, FUNCTIONS};
pub use report::{render, ReportDocument};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "monotone-kernel",
    version,
    about = "Special functions and verification suites for exp(1/t) - trigamma(t)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one library function.
    #[command(allow_negative_numbers = true)]
    Eval {
        /// One of: bessel_i, bessel_kernel, hyper_1f2, exp_tail_h, trigamma,
        /// polygamma, h, kernel_w, q
        function: String,
        args: Vec<String>,
        /// Series tolerance for functions that report an error bound.
        #[arg(long, default_value_t = 1e-16)]
        tol: f64,
    },
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct VerifyArgs {
    /// Suite to run; repeat for several. Defaults to all suites.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    /// Grid override applied to every selected suite, as lo:hi:count:log|lin.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "kmax")]
    pub k_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match cli.command {
        Command::Eval {
            function,
            args,
            tol,
        } => match eval_function(&function, &args, tol) {
            Ok(line) => {
                let _ = writeln!(out, "{line}");
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
        Command::Verify(args) => verify(&args, out, err),
    }
}

fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let precision = std::env::var(PRECISION_ENV).ok();
    let config = match RunConfig::from_args(args, precision.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(warning) = &config.precision_warning {
        let _ = writeln!(err, "warning: {warning}");
    }
    let reports = match config.execute() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let all_pass = reports.iter().all(|r| r.pass);
    let body = render(&reports, config.format, &chrono::Utc::now());
    let written = match &config.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => out.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
