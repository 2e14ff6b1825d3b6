//! Command-line front end: scenario files, analytic coverage sweeps,
//! Monte Carlo runs (optionally joined with the analytic curves), interference
//! moments and figure recipes. Everything the binary does is reachable from
//! here.

mod commands;
pub mod reproduce;
pub mod scenario;
pub mod table;

pub use commands::{cmd_compare, cmd_coverage, cmd_moments, cmd_simulate, MomentSummary, Overrides};
pub use reproduce::{cmd_reproduce, FIGURES};
pub use scenario::{GridSpec, NoiseSpec, Scenario, SimSpec, TierSpec};
pub use table::{write_comparison_csv, ComparisonRow, Metadata, ResultTable, Row};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad scenario, flag or unsupported combination; exit status 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// A computation failed or produced an impossible value; exit status 3.
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(format!("CSV: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
