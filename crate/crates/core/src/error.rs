use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("braid index mismatch: {left} vs {right}")]
    IndexMismatch { left: usize, right: usize },

    #[error("braid index must be at least 2, got {0}")]
    IndexTooSmall(usize),

    #[error("generator sigma_{index} out of range for B_{n}")]
    GeneratorOutOfRange { index: i64, n: usize },

    #[error("not a permutation of 1..={n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("{op} is undefined for a pure power of Delta")]
    PureDeltaPower { op: &'static str },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("budget exhausted after {explored} elements (limit {limit})")]
    BudgetExhausted { explored: usize, limit: usize },

    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_same_index(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::IndexMismatch { left, right })
    }
}
