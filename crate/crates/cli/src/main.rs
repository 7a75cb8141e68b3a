//! `cubex`: build cube complexes, query them and run the excursion and contraction
//! analyses from the command line.
//!
//! Exit codes: 0 success, 1 a demo check failed, 2 input or validation error,
//! 3 search budget exceeded.

mod build;
mod dot;
mod input;
mod morse;
mod query;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubex_core::report::AnalysisReport;
use cubex_core::Error;

#[derive(Parser)]
#[command(name = "cubex", version, about = "Exact combinatorics of finite CAT(0) cube complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate or import a complex and write it as JSON.
    Build {
        #[command(subcommand)]
        kind: build::BuildKind,
    },
    /// Exact queries on a complex file.
    Query {
        #[command(subcommand)]
        op: query::QueryOp,
    },
    /// Excursion chains along a path.
    Excursion(morse::ExcursionArgs),
    /// Contraction profile of a convex subset.
    Contraction(morse::ContractionArgs),
    /// Rebuild the Z * Z^2 spine model and check its ray.
    #[command(name = "demo-zz2")]
    DemoZz2(morse::DemoArgs),
    /// Write the 1-skeleton in Graphviz DOT format.
    ExportDot(dot::DotArgs),
}

/// What a command produced: a report and whether its own checks held.
pub struct Outcome {
    pub report: AnalysisReport,
    pub checks_passed: bool,
}

impl From<AnalysisReport> for Outcome {
    fn from(report: AnalysisReport) -> Self {
        Outcome { report, checks_passed: true }
    }
}

/// Echo of the command line, used as the report's `command` field.
fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> anyhow::Result<Option<Outcome>> {
    let echo = command_echo();
    Ok(match cli.command {
        Command::Build { kind } => Some(build::run(kind, &echo)?),
        Command::Query { op } => Some(query::run(op, &echo)?.into()),
        Command::Excursion(args) => Some(morse::excursion(args, &echo)?),
        Command::Contraction(args) => Some(morse::contraction(args, &echo)?.into()),
        Command::DemoZz2(args) => Some(morse::demo(args, &echo)?),
        Command::ExportDot(args) => {
            dot::run(args)?;
            None
        }
    })
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded(_)) => 3,
        _ => 2,
    }
}

fn print_error(err: &anyhow::Error) {
    eprintln!("error: {err:#}");
    if let Some(Error::Invalid(report)) = err.downcast_ref::<Error>() {
        let json = serde_json::json!({ "error": "invalid complex", "validation": report });
        println!("{}", serde_json::to_string_pretty(&json).expect("validation reports serialize"));
    }
    if let Some(Error::BudgetExceeded(detail)) = err.downcast_ref::<Error>() {
        let json = serde_json::json!({ "error": "budget exceeded", "partial": detail });
        println!("{}", serde_json::to_string_pretty(&json).expect("strings serialize"));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(outcome)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.report.to_json_string().as_bytes());
            if outcome.checks_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(err) => {
            print_error(&err);
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Output file argument shared by several commands.
#[derive(clap::Args, Clone, Debug)]
pub struct OutputArg {
    /// Where to write the result.
    #[arg(short, long)]
    pub output: PathBuf,
}
