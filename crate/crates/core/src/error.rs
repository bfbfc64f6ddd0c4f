use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spectrum model: {0}")]
    InvalidModel(String),

    #[error("cannot normalize an empty state (all amplitudes are zero)")]
    EmptyState,

    #[error("squeezing parameter must satisfy 0 < |gamma| < 1 (got |gamma| = {0})")]
    SqueezingOutOfRange(f64),

    #[error("closed form requires a nonzero squeezing parameter")]
    ZeroSqueezing,

    #[error("hypergeometric series hits a zero denominator at term {0}")]
    ZeroDenominator(usize),

    #[error("binomial index out of range: C({n}, {q})")]
    BinomialRange { n: usize, q: usize },

    #[error("beam-splitter angle must lie in [0, pi] (got {0})")]
    InvalidAngle(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
