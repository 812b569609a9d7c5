//! Command-line front end: argument parsing, figure grids and output formats.

use thiserror::Error;

pub mod commands;
pub mod config;
pub mod figures;
pub mod output;

pub use commands::run;
pub use config::RunConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] apotent::Error),
    /// A computed identity or cross-check did not hold.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for a failed verification, 2 for bad input, 3 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(
                apotent::Error::ZeroOrder
                | apotent::Error::ZeroEigenvalue
                | apotent::Error::OutOfRange { .. }
                | apotent::Error::PrecisionTooLow(_)
                | apotent::Error::InvalidArgument(_)
                | apotent::Error::Parse(_),
            ) => 2,
            _ => 3,
        }
    }
}
