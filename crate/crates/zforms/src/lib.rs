//! Integral quadratic forms and symmetric bilinear forms over Z.
//!
//! A [`QuadFormZ`] is a class of square integer matrices modulo `B - Bᵀ`;
//! its symmetrisation is a [`SymFormZ`]. Definite forms have finite
//! automorphism groups, which [`aut_group`] enumerates completely.

mod aut;
mod exec;
mod quad;
mod short_vectors;
mod standard;
mod sym;

pub use aut::{aut_group, aut_group_with, automorphisms_i64, for_each_automorphism, is_isometric};
pub use exec::Exec;
pub use quad::QuadFormZ;
pub use short_vectors::short_vectors;
pub use standard::{classify_odd_indefinite, even_sublattice_form, hyperbolic, theta_ab, x_form};
pub use sym::SymFormZ;

use exactmat::MatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("form is indefinite")]
    IndefiniteForm,
    #[error("no form with rank {rank} and signature {signature}")]
    InvalidSignature { rank: usize, signature: i64 },
    #[error("form is odd, so it has no quadratic refinement")]
    OddForm,
    #[error("form is already even")]
    FormAlreadyEven,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("entries too large for enumeration")]
    EntriesTooLarge,
    #[error(transparent)]
    Matrix(#[from] MatError),
}

pub type Result<T> = std::result::Result<T, FormError>;
