use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },

    #[error("presentation is inconsistent ({} failing overlap(s))", failures.len())]
    Inconsistent { failures: Vec<String> },

    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: u128, bound: u128 },

    #[error("group of order {order} exceeds the cocycle oracle bound {bound}")]
    OracleBound { order: u128, bound: u128 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("vector is not contained in the ambient module")]
    NotInSubmodule,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error(
        "tail exponent {exponent} is too small: invariants change at {} (retry with a larger exponent)",
        exponent + 1
    )]
    UnstableTailExponent { exponent: u32 },

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
