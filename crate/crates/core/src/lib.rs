//! Exact computer algebra for invariant algebraic surfaces of polynomial
//! vector fields.
//!
//! The crate provides arbitrary-precision rational and multiquadratic
//! number-field arithmetic, sparse multivariate polynomials, Poincaré
//! transforms and stationary points at infinity, semi-invariant
//! verification and search, Jacobi-multiplier checks, degree-bound
//! reports, and the construction of distinguished quadratic vector fields
//! in dimension three from prescribed idempotents.

pub mod cli;
pub mod darboux;
pub mod distinguished;
pub mod exact;
pub mod infinity;
pub mod parse_io;
pub mod poly;
pub mod transform;

pub use exact::{create_tower, FieldElem, FieldTower, Rational};
pub use poly::{MPoly, PolyVectorField};
