//! Error taxonomy shared across the library.
//!
//! Three severities: domain errors describe invalid or unsatisfiable requests,
//! budget errors report exhausted search limits, and invariant violations mean
//! an internal structural assumption failed. Invariant violations are never
//! user mistakes; they signal that a model assumption broke and must surface
//! loudly rather than be masked.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("summand at position {pos} is not mutable")]
    NotMutable { pos: usize },
    #[error("rigidity violated: {0}")]
    RigidityViolation(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),
    #[error("exchange graph search could not reach the target: {0}")]
    Disconnected(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Exit code a command line front end should map this error to.
    /// Invariant violations are 3; everything else is a domain error, 2.
    /// Usage errors (exit 1) never reach the library.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}
