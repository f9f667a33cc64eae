//! Exact scalar and sparse multivariate polynomial arithmetic.

mod matrix;
mod monomial;
mod polynomial;
mod scalar;

pub use matrix::LinearMap;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use polynomial::{Homogeneity, Polynomial};
pub use scalar::{rational_gcd, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ambient mismatch: {left} variables vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),
}
