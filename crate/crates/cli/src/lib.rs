//! The `flopcalc` command line: argument handling, dispatch and report output.
//! [`run`] does everything except touching the process, so tests call it
//! directly.

mod commands;
mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use flopcalc_core::homalg::{ExtContext, OracleMode};
use flopcalc_core::Error;

pub use report::{Outcome, Report, SCHEMA};

#[derive(Debug, Parser)]
#[command(name = "flopcalc", version, about = "Exact cohomology, Ext and mutation checks for homogeneous bundles")]
pub struct Cli {
    /// Space for expressions written without an `@space` suffix.
    #[arg(long, global = true)]
    space: Option<String>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Last fiber degree listed for H^0 on total spaces.
    #[arg(long, global = true, default_value_t = 10)]
    cutoff: u64,
    /// Map-rank oracle used to settle long exact sequences.
    #[arg(long, global = true, value_enum, default_value_t = Oracle::Quadric)]
    oracle: Oracle,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Quadric,
    None,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cohomology of a homogeneous bundle.
    Cohomology { expr: String },
    /// RHom(source, target).
    Ext { source: String, target: String },
    /// Tilting check for a direct sum.
    TiltingCheck { expr: String },
    /// One object, or an ordered collection separated by commas.
    ExceptionalCheck { objects: String },
    /// Sphericity of iota_* F for F a bundle on the zero section; --space
    /// names the total space.
    SphericalCheck { expr: String },
    /// Mutation of an exceptional collection at the pair (i, i+1), 0-based.
    Mutate {
        collection: String,
        #[arg(long, conflicts_with = "right", required_unless_present = "right")]
        left: Option<usize>,
        #[arg(long)]
        right: Option<usize>,
    },
    /// Resolution of a target by an exceptional collection.
    Resolve {
        target: String,
        /// Comma-separated collection.
        #[arg(long)]
        against: String,
    },
    /// Iyama-Wemyss mutation chain, by name or in chain-spec form.
    IwChain { chain: String },
    /// The cyclic family Tot(O(-n)) over P^(n-1).
    Cyclic {
        n: u32,
        /// Twist index k for a single twist-orbit image.
        #[arg(long, requires = "label")]
        twist: Option<i64>,
        /// Label L^j to move.
        #[arg(long, requires = "twist")]
        label: Option<String>,
    },
    /// Every acceptance criterion as a markdown report.
    Repro,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error: bad input is a usage error, an undecided
/// computation is inconclusive and a failed hypothesis is a failure.
pub fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::Inconclusive(_)
        | Error::Unsupported(_)
        | Error::UnsupportedPlethysm(_)
        | Error::UnsupportedWedge(_)
        | Error::ZeroSlope => Outcome::Inconclusive,
        Error::Hypothesis(_) => Outcome::Fail,
        _ => Outcome::UsageError,
    }
}

/// Runs the command line `args`, program name first.
pub fn run(args: &[String]) -> Run {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Run { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Run { code: 64, stdout: String::new(), stderr: text },
            };
        }
    };
    let ctx = ExtContext {
        oracle: match cli.oracle {
            Oracle::Quadric => OracleMode::Quadric,
            Oracle::None => OracleMode::None,
        },
    };
    let oracle = format!("{:?}", cli.oracle).to_lowercase();
    let command: Vec<String> = args.iter().skip(1).cloned().collect();
    let report = |outcome, inputs, result, provenance| Report {
        schema: SCHEMA.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.clone(),
        inputs,
        oracle: oracle.clone(),
        outcome,
        result,
        provenance,
    };
    match commands::execute(&cli, &ctx) {
        Ok(done) => {
            let code = done.outcome.exit_code();
            let stdout = if cli.json {
                report(done.outcome, done.inputs, done.result, done.provenance).to_json()
            } else {
                done.text
            };
            Run { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let outcome = error_outcome(&e);
            let message = format!("error: {e}\n");
            if cli.json {
                let result = serde_json::json!({ "error": e.to_string() });
                Run {
                    code: outcome.exit_code(),
                    stdout: report(outcome, Vec::new(), result, Vec::new()).to_json(),
                    stderr: message,
                }
            } else {
                Run { code: outcome.exit_code(), stdout: String::new(), stderr: message }
            }
        }
    }
}
