use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity error: {0}")]
    Arity(String),
    #[error("function is not self-dual")]
    NotSelfDual,
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("variable index {index} out of range for arity {arity}")]
    Index { index: usize, arity: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("function is not a linear threshold function")]
    NotThreshold,
    #[error("function is not ample")]
    NotAmple,
    #[error("realization does not realize the function")]
    InvalidRealization,
    #[error("class violation: {0}")]
    Class(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid SD representative: {0}")]
    InvalidRepresentative(String),
    #[error("inadmissible weights: {0}")]
    Admissibility(String),
    #[error("engine mismatch at n = {n}: direct {direct:?}, sd {sd:?}")]
    EngineMismatch {
        n: usize,
        direct: (u64, u64),
        sd: (u64, u64),
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
