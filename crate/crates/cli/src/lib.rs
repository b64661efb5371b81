//! Case runner, sweep driver and CSV output for the `revisit` binary.

pub mod config;
pub mod run;

use revisit_core::RevisitError;
use thiserror::Error;

pub use config::{CaseConfig, SensorConfig, SweepAxis, SweepParam, SweepSpec};
pub use run::{run_case, run_oracle, run_sweep, write_csv, CaseOutcome, SweepRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] RevisitError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for bad input, 2 for failures inside the run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Core(RevisitError::KeplerNonConvergence { .. }) => 2,
            CliError::Core(_) => 1,
            CliError::Io(_) | CliError::Csv(_) => 2,
        }
    }
}
