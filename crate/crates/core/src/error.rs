use std::io;

use thiserror::Error;

/// Errors produced by the solvers, checkers and file readers.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments do not describe a well-formed problem instance.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The profile lies outside the preference domain a solver is exact on.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// An enumeration would exceed its configured budget.
    #[error("size limit exceeded: {what} needs {required}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    /// Malformed profile or auxiliary file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A reduction solution could not be mapped back to the source instance.
    #[error("extraction failed: {0}")]
    Extraction(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainViolation(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
