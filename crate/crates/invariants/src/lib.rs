//! Closed-form homology of circle bundles over nonorientable surfaces,
//! surface exteriors in the 4-ball and their double (branched) covers.

mod group;
mod tables;

pub use group::{DecoratedModule, FinAbGroup};
pub use tables::{
    boundary_universal_cover, branched_cover_module, euler_characteristic, euler_number_double_cover,
    homology_boundary_exterior, homology_branched_cover, homology_circle_bundle, homology_circle_bundle_cover,
    homology_exterior, zz2_homology_exterior, HomologyTable,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("nonorientable genus must be at least 1")]
    InvalidGenus,
    #[error("Euler number {0} is odd")]
    OddEulerNumber(i64),
}

pub type Result<T> = std::result::Result<T, InvariantsError>;
