//! Library side of the `forge` binary: document parsing, the per-command
//! pipelines and SVG rendering. Every command returns a [`Report`] plus an
//! exit status; `main` only does I/O.

use std::fmt;

pub mod commands;
pub mod doc;
pub mod report;
pub mod svg;

pub use report::{Outcome, Report};

/// Exit-code contract: 0 success, 1 parse error, 2 violated mathematical
/// precondition, 3 numeric failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Math(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Math(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Math(m) => write!(f, "{m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<forge_core::Error> for CliError {
    fn from(e: forge_core::Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Math(e.to_string())
        }
    }
}
