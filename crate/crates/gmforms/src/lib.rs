//! Quadratic refinements of mod 2 intersection forms of surfaces.
//!
//! A Z/4-valued quadratic form refines a symmetric form over Z/2; its Brown
//! invariant in Z/8 is read off a Gauss sum. The surface helpers tie the
//! invariant to normal Euler numbers and the admissible Euler-number range.

mod quad;
mod residue;
mod surface;

pub use quad::{find_isometry, GaussSum, Z2QuadForm, Z4QuadForm};
pub use residue::{Z4, Z8};
pub use surface::{check_gm_congruence, massey_range, standard_gm_form, SurfaceInvariants};

use thiserror::Error;

/// Largest dimension for which all `2^dim` elements are enumerated.
pub const MAX_ENUMERATION_DIM: usize = 30;

/// Largest dimension accepted by the isometry search.
pub const MAX_ISOMETRY_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GmError {
    #[error("expected a vector of length {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is not alternating")]
    NotAlternating,
    #[error("value on basis vector {0} has the wrong parity for its self-pairing")]
    InconsistentValue(usize),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("Gauss sum {re}{im:+}i is not a power of sqrt 2 times an eighth root of unity")]
    GaussSumAnomaly { re: i64, im: i64 },
    #[error("dimension {0} is too large for exhaustive enumeration")]
    TooLarge(usize),
    #[error("Euler number {e} is outside the admissible range for h = {h}, knot signature {sigma_k}")]
    EulerOutOfRange { h: u32, e: i64, sigma_k: i64 },
    #[error("Euler number {0} is odd")]
    OddEulerNumber(i64),
    #[error("invalid surface data: {0}")]
    InvalidInvariants(String),
}

pub type Result<T> = std::result::Result<T, GmError>;
