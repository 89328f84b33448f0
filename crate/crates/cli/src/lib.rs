//! Command-line front end: parses a run configuration, evaluates one of the
//! table commands and writes a CSV or JSON-lines table.

pub mod config;
pub mod output;
pub mod run;

use casimir_core::CasimirError;

pub use config::{parse_args, parse_config, RunConfig};
pub use output::{Cell, Table};
pub use run::{execute, run};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Help or version text requested explicitly.
    #[error("{0}")]
    Info(String),
    /// Usage text shown when no command is given.
    #[error("{0}")]
    Help(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Engine(#[from] CasimirError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Info(_) => 0,
            Self::Help(_) | Self::Usage(_) => 2,
            Self::Validation(_) => 3,
            Self::Engine(e) => match e {
                CasimirError::Accuracy { .. }
                | CasimirError::Resonance(_)
                | CasimirError::Divergence(_) => 4,
                _ => 3,
            },
            Self::Io { .. } => 5,
        }
    }
}
