//! Exact Laurent polynomial arithmetic and the homology quotient it is read in.

mod det;
mod homology;
mod poly;
mod scalar;
pub mod smith;

use thiserror::Error;

pub use det::bareiss_determinant;
pub use homology::{unit_equiv, unit_normalize, GroupElement, HomologyModel, QuotientBasis};
pub use poly::{Exponent, LaurentPoly};
pub use scalar::{Coeff, ExactDiv};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("relation module has torsion (invariant factor {factor})")]
    TorsionDetected { factor: i64 },
    #[error("polynomial uses {found} variables but the quotient has rank {rank}")]
    ModelMismatch { rank: usize, found: usize },
}
