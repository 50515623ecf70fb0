use crate::exactla::Field;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("unknown key: {0}")]
    Key(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("path space is not finite-dimensional: {0}")]
    NotFinite(String),
    #[error("object outside the graded window: {0}")]
    WindowOverflow(String),
    #[error("morphism target does not match sieve apex: {0}")]
    TargetMismatch(String),
    #[error("sieves live on different objects: {0}")]
    ApexMismatch(String),
    #[error("enumeration exceeds cap: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("maps do not compose to zero: {0}")]
    NotAComplex(String),
    #[error("colimit did not stabilise: {0}")]
    Unstable(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
