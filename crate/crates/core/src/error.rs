use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("input length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid program: {0}")]
    InvalidProgram(String),

    #[error("invalid protocol: {0}")]
    InvalidProtocol(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("operation not supported for {0} programs")]
    UnsupportedMode(&'static str),

    #[error("exhaustive limit exceeded: {what} = {value} > {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("partition does not agree with the program order")]
    PartitionNotAgreed,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("closeness parameter must be at least 1")]
    BetaBelowOne,

    #[error("probabilistic outcome is undefined on input {0}")]
    UndefinedOutcome(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Param(msg.into()))
}
