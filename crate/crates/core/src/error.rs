//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by code construction, decoding, and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Code parameters violate a structural constraint (degree consistency,
    /// rate bounds, ...).
    #[error("invalid code spec: {0}")]
    InvalidSpec(String),

    /// Random construction exhausted its retry budget.
    #[error("code construction failed: {0}")]
    ConstructionFailed(String),

    /// A vector length does not match the graph dimension it is used with.
    #[error("dimension mismatch for {what}: expected {expected}, got {actual}")]
    Dimension {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    /// The parity-check matrix does not have full row rank, so a systematic
    /// encoder for the nominal rate does not exist.
    #[error("parity-check matrix is rank deficient: rank {rank} < {checks} checks")]
    RankDeficient { rank: usize, checks: usize },

    /// A decoder, channel, or experiment parameter is out of range.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// ALIST text could not be parsed.
    #[error("alist parse error at line {line}: {msg}")]
    AlistParse { line: usize, msg: String },

    /// A report or plan file could not be parsed.
    #[error("parse error at line {line} of {what}: {msg}")]
    TextParse {
        what: &'static str,
        line: usize,
        msg: String,
    },

    /// An I/O operation failed; carries the path for context.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
