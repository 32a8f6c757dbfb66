//! Exact rational linear algebra: matrices over Q with arbitrary-precision
//! entries, canonical subspaces and quotient spaces.
//!
//! Everything downstream (cochain complexes, spectral sequence pages) is a
//! rank computation in disguise, so the ground field is Q throughout and
//! floating point is never used.

mod matrix;
mod quotient;
mod scalar;
mod subspace;

pub use matrix::ExactMatrix;
pub use quotient::QuotientSpace;
pub use scalar::{parse_scalar, qi, qr, scalar_to_string, Scalar};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("containment failure: {0}")]
    NotContained(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid scalar literal: {0}")]
    BadScalar(String),
}
