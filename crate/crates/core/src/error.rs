use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("path enumeration exceeded length bound {0}; algebra is not finite dimensional")]
    InfiniteDimensional(usize),

    #[error("endomorphism ring has a simple quotient that is not split over the ground field")]
    NonSplitEndomorphismRing,

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("lift failed: {0}")]
    LiftFailed(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("not d-cluster tilting: {0}")]
    NotClusterTilting(String),

    #[error("no such sequence: {0}")]
    NoSuchSequence(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
