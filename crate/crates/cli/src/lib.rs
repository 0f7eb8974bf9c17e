//! Scenario parsing, execution and reporting for the `workbench` binary.
//!
//! A scenario is a restricted JSON document: a ring, named objects given by
//! string matrices the ring parses, and a pipeline of operations over those
//! names. Reports are canonical JSON (sorted keys, fixed number formats) so
//! golden-file comparisons stay stable.

pub mod report;
pub mod runner;
pub mod scenario;
pub mod value;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed scenario: parse or validation failure (exit code 1).
    #[error("scenario error: {0}")]
    Scenario(String),
    /// An operation failed mathematically (exit code 2).
    #[error("operation error at step {label}: {source}")]
    Operation {
        label: String,
        source: workbench_core::Error,
    },
    /// A required certificate came back undetermined (exit code 3).
    #[error("horizon insufficient at step {0}: a required certificate is undetermined")]
    Horizon(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scenario(_) | CliError::Io(_) => 1,
            CliError::Operation { source, .. } => match source {
                workbench_core::Error::HorizonInsufficient(_) => 3,
                _ => 2,
            },
            CliError::Horizon(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
