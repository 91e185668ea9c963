//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series denominator has a non-invertible constant term")]
    NonInvertibleConstantTerm,
    #[error("singular parameters: {0}")]
    SingularParameters(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("embedding error: {0}")]
    EmbeddingError(String),
    #[error("character table is not multiplicative: {0}")]
    NotMultiplicative(String),
    #[error("inconsistent character spec: {0}")]
    InconsistentSpec(String),
    #[error("pole at s = 1")]
    PoleAtOne,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("product of two log-carrying values would produce a (log q)^2 term")]
    LogSquared,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
