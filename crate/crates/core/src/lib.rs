//! Numerical engine for a five-parameter quadratic-phase transform on the
//! real line with a Dunkl-type kernel, together with the matching
//! translation and convolution operators and verification suites.

pub mod analysis;
pub mod error;
pub mod kernels;
pub mod ops;
pub mod quadrature;
pub mod signal;
pub mod suites;
pub mod transform;
pub mod specfun;

pub use error::{QpdtError, Result};
