use thiserror::Error;

/// Errors raised by the exact toric machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0}: the zero vector has no primitive representative")]
    ZeroVector(&'static str),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("monoid has nonzero units (its cone contains the line spanned by {line})")]
    HasUnits { line: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("derivation does not preserve the algebra: image monomial {monomial} leaves the monoid")]
    Closure { monomial: String },

    #[error("derivation is not nilpotent on the argument within {max_iter} iterations")]
    NotNilpotent { max_iter: usize },

    #[error("inconclusive within the current bounds: {0}")]
    Inconclusive(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("invalid input document: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
