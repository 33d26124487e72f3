use thiserror::Error;

use crate::linalg::CoeffRing;

/// Every failure the engine can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linearization requested for the field {0}")]
    NotTruncated(CoeffRing),
    #[error("B not contained in Z")]
    NotContained,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid complex at degree {degree}: {reason}")]
    InvalidComplex { degree: i64, reason: String },
    #[error("invalid chain map at degree {degree}: {reason}")]
    InvalidChainMap { degree: i64, reason: String },
    #[error("incompatible supports: {0}")]
    Support(String),
    #[error("not projective: {0}")]
    NotProjective(String),
    #[error("malformed document at {path}: {reason}")]
    Document { path: String, reason: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("witness rejected: {0}")]
    Witness(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
