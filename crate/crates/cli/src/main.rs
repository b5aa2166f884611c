//! `hyplab`: run the inequality suite and the growth experiments from the
//! command line.

mod experiment;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hyplab", version, about = "Numerical checks of hyperbolic length inequalities for analytic maps of the disc")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run check families and write a summary plus one JSON file per family.
    #[command(after_help = verify::HELP)]
    Verify(verify::VerifyArgs),
    /// Run a named experiment and write its table.
    #[command(after_help = experiment::HELP)]
    Experiment(experiment::ExperimentArgs),
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("HYPLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("HYPLAB_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("cannot size the thread pool: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Verify(args) => verify::run(&args),
        Command::Experiment(args) => experiment::run(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Where a command writes: a file or directory, or stdout when absent.
pub type OutPath = Option<PathBuf>;
