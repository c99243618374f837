//! Linear algebra, hermitian quadratic forms and quasi-formations over the
//! group ring `Λ = Z[Z₂]`, with `Z₂ = ⟨T⟩` acting trivially under the
//! involution.
//!
//! Nearly everything reduces to the two ring maps `T ↦ ±1`: a matrix over
//! `Λ` is the same thing as a pair of integer matrices congruent mod 2.

mod complement;
mod elt;
mod form;
mod matrix;
mod quasi;

pub use complement::{
    elementary_criterion, find_lagrangian_complement, is_lagrangian_complement, CriterionOptions, ElementaryVerdict,
};
pub use elt::{GrElt, Sign};
pub use form::{eval_form, free_wall_form, QuadFormGr};
pub use matrix::GrMatrix;
pub use quasi::{QuasiFormation, Ring};

use exactmat::MatError;
use thiserror::Error;
use zforms::FormError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrError {
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("evaluations at T = 1 and T = -1 disagree mod 2")]
    IncompatibleEvaluations,
    #[error("matrix is not invertible over the group ring")]
    NotInvertible,
    #[error("columns do not span a direct summand")]
    NotASummand,
    #[error("module is not free: {0}")]
    NotFree(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Form(#[from] FormError),
}

pub type Result<T> = std::result::Result<T, GrError>;
