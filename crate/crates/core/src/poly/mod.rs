//! Sparse multivariate polynomials over a tower field, polynomial vector
//! fields, exact matrices, and Sylvester resultants.

mod matrix;
mod mpoly;
mod resultant;
mod vfield;

use std::fmt;

pub use matrix::{char_poly, deflate_root, det_mpoly_matrix, FieldMatrix};
pub use mpoly::{DivideOutcome, MPoly, Mono};
pub use resultant::sylvester_resultant;
pub use vfield::PolyVectorField;

/// Errors raised by polynomial operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    DimensionMismatch,
    ZeroDivisor,
    /// An input to the resultant is constant in the elimination variable.
    DegenerateInVar,
    ZeroPolynomial,
    NotHomogeneous,
    /// Coefficient towers are incompatible.
    TowerMismatch,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch => write!(f, "dimension mismatch"),
            PolyError::ZeroDivisor => write!(f, "division by the zero polynomial"),
            PolyError::DegenerateInVar => {
                write!(f, "input is constant in the elimination variable")
            }
            PolyError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            PolyError::NotHomogeneous => write!(f, "vector field is not homogeneous"),
            PolyError::TowerMismatch => write!(f, "coefficient towers are incompatible"),
        }
    }
}

impl std::error::Error for PolyError {}
