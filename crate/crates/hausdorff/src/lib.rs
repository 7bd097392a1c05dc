//! Command-line front end, output formats and a rayon executor for
//! `hausdorff-core`.

pub use hausdorff_core as core;

pub mod checks;
pub mod commands;
pub mod exec;
pub mod output;

use clap::Parser;
use serde_json::json;

use hausdorff_core::Error as CoreError;

use crate::commands::Command;
use crate::exec::{Rayon, THREADS_ENV};
use crate::output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    /// 2 for bad usage, 3 for numerical failure, 4 for domain errors,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(CoreError::ConvergenceFailure { .. })
            | CliError::Core(CoreError::SolverFailureBudgetExceeded { .. }) => 3,
            CliError::Core(_) => 4,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hausdorff",
    version,
    about = "Moment spaces of [0, 1]: volumes, representations, kernels and brittleness"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    /// Runs the command and returns the rendered output. A `check` run with
    /// failing rows still renders; the failure is reported separately.
    pub fn execute(&self) -> (Result<Vec<u8>, CliError>, Option<CliError>) {
        let result = (|| {
            let exec = Rayon::with_threads(self.threads)?;
            let table = self.command.run(&exec, self.seed)?;
            let meta = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "seed": self.seed,
                "command": &self.command,
            });
            let verdict = match &self.command {
                Command::Check(_) => {
                    let total = table.rows.len();
                    let failed = table
                        .column("pass")
                        .into_iter()
                        .flatten()
                        .filter(|c| matches!(c, output::Cell::Bool(false)))
                        .count();
                    (failed > 0).then_some(CliError::ChecksFailed { failed, total })
                }
                _ => None,
            };
            Ok((table.render(self.format, &meta)?, verdict))
        })();
        match result {
            Ok((bytes, verdict)) => (Ok(bytes), verdict),
            Err(e) => (Err(e), None),
        }
    }
}
