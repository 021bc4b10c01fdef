use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("quiver mismatch: {0}")]
    QuiverMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("not a short exact sequence: {0}")]
    NotExact(String),
    #[error("unsupported enumeration: {0}")]
    Unsupported(String),
    #[error("non-projective input: {0}")]
    NonProjective(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
