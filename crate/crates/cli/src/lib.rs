//! Command-line front end for `hilbert-forms`.
//!
//! Each subcommand builds a [`Report`] that renders either as CSV (header row
//! plus data rows, shortest round-trip decimals) or as a JSON document.

pub mod args;
pub mod commands;
pub mod report;

use thiserror::Error;

pub use args::{Cli, Command, Format};
pub use commands::run;
pub use report::Report;

/// Exit status for a successful run or an all-pass verification.
pub const EXIT_OK: i32 = 0;
/// Exit status for runtime errors and verification failures.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for invalid flags or parameter values.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] hilbert_forms::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            // bad parameter values are usage errors, not runtime failures
            CliError::Numeric(hilbert_forms::Error::Domain { .. }) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}
