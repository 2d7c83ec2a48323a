//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside its documented domain (bad angle, empty
    /// path list, zero horizon, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A runtime contract between components was violated (reward outside
    /// [0, 1], mismatched series lengths, ...).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A scenario configuration file or CLI override could not be parsed.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::ContractViolation(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code for the CLI: config problems exit 2, runtime
    /// contract violations exit 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            _ => 3,
        }
    }
}
