//! Command implementations behind the `cseig` binary.
//!
//! Each command is a plain function returning a report value so the
//! integration tests can drive it without spawning a process.

pub mod bench;
pub mod matrix_file;
pub mod oscillator;
pub mod report;
pub mod spectrum;
pub mod verify;

use std::path::PathBuf;

/// Exit codes. Stable: scripts depend on them.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// Verification rejected a report, or an I/O failure.
    pub const FAILURE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const BREAKDOWN: i32 = 3;
    pub const NO_CONVERGENCE: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid report: {0}")]
    Report(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Solver(#[from] cseig::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cseig::Error as E;
        match self {
            CliError::Io { .. } | CliError::Verification(_) => exit::FAILURE,
            CliError::Parse { .. } | CliError::Report(_) | CliError::Argument(_) => exit::INVALID_INPUT,
            CliError::Solver(e) => match e {
                E::IsotropicBreakdown { .. } | E::RotationBreakdown { .. } => exit::BREAKDOWN,
                E::NoConvergence { .. } | E::RootsNoConvergence(_) => exit::NO_CONVERGENCE,
                _ => exit::INVALID_INPUT,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}
