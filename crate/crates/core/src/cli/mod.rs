//! The `bern` command line: exact values, zero isolation, certificates, the
//! inequality suite and comparison tables, written as JSON, CSV or text.
//!
//! Exit codes are 0 on success, 1 when any checked claim fails or stays
//! undecided, and 2 on usage errors.

mod commands;
mod config;
mod output;

pub use config::{parse_config_text, Format, RunConfig};
pub use output::Table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bern",
    version,
    about = "Exact Bernoulli polynomial computations and certified inequality checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct GlobalArgs {
    /// Largest index for pointwise checks, certificates and tables [default: 10]
    #[arg(long, global = true)]
    pub n_max: Option<u32>,
    /// Largest index for scalar checks [default: max(n-max, 50)]
    #[arg(long, global = true)]
    pub scalar_n_max: Option<u32>,
    /// Grid density d: sample points k/(2d) for k = 1..d-1 [default: 64]
    #[arg(long, global = true)]
    pub grid: Option<u32>,
    /// Starting precision of enclosures in bits [default: 64]
    #[arg(long, global = true)]
    pub bits: Option<u32>,
    /// Output format [default: text for single values, json for reports]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key=value configuration file; flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecialPoint {
    Half,
    Quarter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    RatioBounds,
    R2n,
    Zeta,
    Limits,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Bernoulli number B_n
    Number { n: u32 },
    /// Print the coefficients of B_n(t)
    Poly { n: u32 },
    /// Print B_n(t) at a rational point
    Value {
        n: u32,
        /// Rational point such as 1/4, -3/2 or 0.125
        t: Option<String>,
        /// Use the closed forms at t = 1/2 or t = 1/4
        #[arg(long, value_enum, conflicts_with = "t")]
        at: Option<SpecialPoint>,
    },
    /// Isolate the zero of B_2n in (0, 1/2) and check its bounds
    Zero {
        n: u32,
        /// Maximum width of the isolating interval
        #[arg(long, default_value = "1/1099511627776")]
        width: String,
    },
    /// Emit monotonicity or sequence certificates for one claim family
    Certify {
        #[arg(value_parser = config::parse_certify_id)]
        claim: String,
    },
    /// Run the inequality suite or a subset of it
    Verify {
        /// Comma-separated claim ids such as R1,R13
        #[arg(long, value_delimiter = ',', value_parser = config::parse_claim_id)]
        claims: Option<Vec<String>>,
    },
    /// Write a comparison table
    Table {
        #[arg(value_enum)]
        kind: TableKind,
    },
}

/// Parses `args` (including the program name), runs the command and writes
/// its output to `--out` or `stdout`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let config = match RunConfig::resolve(&cli.global, &cli.command) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let result = with_jobs(config.jobs, || commands::execute(&cli.command, &config));
    match result {
        Ok(out) => {
            let written = match &config.output_path {
                Some(path) => std::fs::write(path, &out.body),
                None => stdout.write_all(out.body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_FAILURE;
            }
            for line in &out.diagnostics {
                let _ = writeln!(stderr, "{line}");
            }
            if out.ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(commands::CommandError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(commands::CommandError::Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs.and_then(|j| rayon::ThreadPoolBuilder::new().num_threads(j).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R>(_jobs: Option<usize>, f: impl FnOnce() -> R) -> R {
    f()
}
