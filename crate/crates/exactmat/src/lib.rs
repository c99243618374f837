//! Exact integer and rational linear algebra.
//!
//! Everything is arbitrary precision. Matrices are dense and row-major;
//! the sizes this workspace deals with are small, but intermediate values
//! in elimination can grow, so no machine-width arithmetic is used here.

mod det;
pub mod gf2;
mod int_matrix;
mod rat_matrix;
mod snf;

pub use det::{det, integer_inverse, rank, rational_inverse};
pub use int_matrix::IntMatrix;
pub use rat_matrix::RatMatrix;
pub use snf::{
    cokernel_invariants, complete_to_basis, has_integer_left_inverse, integer_kernel, integer_left_inverse,
    smith_normal_form, solve_integer, Cokernel, SnfResult,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

/// Errors raised by matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MatError>;
