//! Error type shared by every fallible operation in the crate.

use std::fmt;

/// Failure modes of transforms, operators, and verification routines.
#[derive(Debug, Clone, PartialEq)]
pub enum QpdtError {
    /// A parameter lies outside the mathematical domain of the operation
    /// (e.g. `b == 0`, `mu < -1/2`, a non-positive gamma argument).
    Domain(String),
    /// A requested computation exceeds a hard resource guard
    /// (e.g. total quadrature nodes beyond the configured budget).
    Resource(String),
    /// A function evaluation produced a non-finite value where a finite
    /// one is required.
    Evaluation(String),
    /// A truncated integral's tail estimate exceeds the requested accuracy.
    TailBound(String),
    /// An iterative scheme failed to converge within its iteration cap.
    Convergence(String),
    /// A sampled signal was queried outside its tabulated domain, or is
    /// too sparse to interpolate.
    Interpolation(String),
}

impl fmt::Display for QpdtError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QpdtError::Domain(msg) => write!(f, "domain error: {msg}"),
            QpdtError::Resource(msg) => write!(f, "resource limit: {msg}"),
            QpdtError::Evaluation(msg) => write!(f, "evaluation error: {msg}"),
            QpdtError::TailBound(msg) => write!(f, "tail bound violated: {msg}"),
            QpdtError::Convergence(msg) => write!(f, "convergence failure: {msg}"),
            QpdtError::Interpolation(msg) => write!(f, "interpolation error: {msg}"),
        }
    }
}

impl std::error::Error for QpdtError {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, QpdtError>;
