use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("algebra has no Z-grading")]
    NoGrading,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("schema violation at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("inhomogeneous vector")]
    Inhomogeneous,
    #[error("derivations act on different algebras")]
    AlgebraMismatch,
    #[error("cannot resolve derivation selector `{0}`")]
    Unresolvable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
