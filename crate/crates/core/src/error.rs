use thiserror::Error;

/// Errors produced by the exact arithmetic and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("series is not divisible by t^{power}: coefficient {index} is nonzero")]
    NotDivisible { power: usize, index: usize },
    #[error("index {index} out of range (truncation order {order})")]
    OutOfRange { index: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
