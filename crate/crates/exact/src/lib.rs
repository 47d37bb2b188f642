//! Exact arithmetic substrate for the twistkit workspace: arbitrary-precision
//! rationals, Gaussian rationals, dense linear algebra over Q(i), and
//! multivariate polynomials with a small exact polynomial-system solver.

pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::Matrix;
pub use poly::{describe_variety, groebner_basis, MultiPoly, VarietyDescription};
pub use scalar::{GaussianRational, Rational, Scalar};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("parse error: {0}")]
    Parse(String),
}
