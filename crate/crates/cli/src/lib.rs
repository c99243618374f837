//! The decision pipeline behind the `z2surf` binary, the appendix
//! reproduction, and small helpers shared by the subcommands.

mod appendix;
mod decide;

pub use appendix::{reproduce_appendix, run_appendix, AppendixOptions, AppendixReport, Check, Injection, Section};
pub use decide::{decide, decide_closed, Details, LinkingSummary, Route, Theorem, Verdict};

use exactmat::{BigRational, IntMatrix, MatError};
use gmforms::GmError;
use invariants::InvariantsError;
use linkforms::LinkError;
use thiserror::Error;
use zforms::FormError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("e = {e} is outside the range of normal Euler numbers for h = {h}, σ(K) = {sigma_k}")]
    EulerOutOfRange { h: u32, e: i64, sigma_k: i64 },
    #[error("parity violation: {0}")]
    InvalidParity(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("mismatch against reference values:\n{0}")]
    MismatchDetected(String),
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Gm(#[from] GmError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

impl CliError {
    /// 2 for bad input, 3 for a failed self-check, 1 for engine failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::EulerOutOfRange { .. }
            | CliError::InvalidParity(_)
            | CliError::InvalidInput(_)
            | CliError::Matrix(MatError::Parse(_))
            | CliError::Gm(GmError::InvalidInvariants(_)) => 2,
            CliError::MismatchDetected(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Entries of a matrix whose values are known to be small.
pub fn to_i64_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let flat = m.to_i64_vec().ok_or_else(|| CliError::InvalidInput("matrix entries exceed 64 bits".into()))?;
    Ok(flat.chunks(m.cols().max(1)).take(m.rows()).map(<[i64]>::to_vec).collect())
}

pub fn rationals(xs: &[BigRational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}
