//! Error types shared across the crate.

use thiserror::Error;

/// Unified error type for construction, validation and solver failures.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a structural invariant (singular basis,
    /// asymmetric operator, broken group closure, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A computation would exceed a configured resource budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// An iterative solver failed to reach its tolerance.
    #[error("solver failure: {0}")]
    Solver(String),

    /// An internal consistency cross-check failed. These are always bugs:
    /// two independent evaluation routes disagreed beyond tolerance.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// A file could not be parsed; carries line number and field context.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn solver(msg: impl Into<String>) -> Self {
        Error::Solver(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
