//! Exact-arithmetic toolkit for Hom-Lie superalgebras: structure constants,
//! super-biderivations, the centroid, linear super-commuting maps and
//! mechanical checks of the identities relating them.
//!
//! All arithmetic is over arbitrary-precision rationals.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod checks;
pub mod constructions;
pub mod error;
pub mod grading;
pub mod linalg;
pub mod report;
pub mod spaces;
pub mod zoo;

pub use algebra::{
    AlgebraDescription, BracketEntry, HomLieSuperalgebra, Quotient, ValidationReport,
};
pub use error::{Error, Result};
pub use grading::{GradedBasis, GradedBilinearMap, GradedLinearMap, Parity};
pub use linalg::{Matrix, Rational, Subspace, Vector};
pub use report::{CheckReport, Witness};
pub use spaces::{BiderivationSpace, CentroidSpace, CommutingMapSpace, SymmetryConvention};
