//! Finite split quadratic linking forms.
//!
//! A nondegenerate integral quadratic form `θ` with symmetrisation `A`
//! determines a linking form on `coker(A)`: the pairing `b = A⁻¹` and the
//! refinement `ν(x) = xᵀA⁻¹θA⁻¹x`, both mod 1. This crate computes that form,
//! its automorphism group, the image of `Aut(θ)` in it, the resulting orbit
//! set, and Nikulin's surjectivity criterion.

mod aut;
mod baut;
mod boundary;
mod form;
mod nikulin;
mod table;

pub use aut::{automorphisms, find_isometry, isometries, LinkAut, SearchOptions};
pub use baut::{baut, boundary_image, BautOptions, BautReport};
pub use boundary::{boundary_form, BoundaryForm};
pub use form::FinQuadLinkForm;
pub use nikulin::{ell5_trivial, n_p, nikulin_check, Ell5Options, Ell5Verdict, NikulinVerdict, TrivialRoute};
pub use zforms::Exec;

use exactmat::MatError;
use thiserror::Error;
use zforms::FormError;

/// Default bound on `|T|` for enumerations.
pub const DEFAULT_GROUP_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("form is indefinite")]
    IndefiniteForm,
    #[error("group of order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("matrix is not an isometry of the form")]
    NotAnIsometry,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid linking form: {0}")]
    InvalidForm(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Form(FormError),
    #[error(transparent)]
    Matrix(#[from] MatError),
}

impl From<FormError> for LinkError {
    fn from(e: FormError) -> Self {
        match e {
            FormError::DegenerateForm => LinkError::DegenerateForm,
            FormError::IndefiniteForm => LinkError::IndefiniteForm,
            FormError::Matrix(m) => LinkError::Matrix(m),
            other => LinkError::Form(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, LinkError>;
