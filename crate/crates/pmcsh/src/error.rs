//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by simulator configuration and I/O paths.
///
/// Numeric kernels (`q_function`, the closed-form BER expressions) are total
/// over validated inputs and return plain `f64`; validation happens where
/// values enter the system (parameter loading, model constructors, run
/// configuration).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value violated a documented precondition (wrong length, ordering,
    /// sign, non-finite, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A run configuration is inconsistent or out of range.
    #[error("invalid config: {0}")]
    Config(String),

    /// A parameter file could not be parsed; carries the offending line.
    #[error("{path}:{line}: {message}")]
    ParamFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code for the CLI: 1 for configuration problems, 2 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}
