//! Exact arithmetic: arbitrary-precision rationals, multiquadratic towers
//! ℚ(√d₁,…,√dₖ), one dynamic quadratic extension on top, and exact rational
//! linear algebra.

mod elem;
mod linalg;
mod quad;
mod sqrt;
mod tower;

use std::fmt;

pub use elem::{ArithOp, FieldElem};
pub use linalg::{rational_kernel, rational_rank, rational_solve};
pub use quad::{Eigenvalue, QuadElem, QuadExt};
pub use sqrt::{decimal_string, real_embedding, sqrt_in_field, SqrtOutcome, DEFAULT_PRECISION_BITS};
pub use tower::{create_tower, FieldTower, MAX_TOWER_GENERATORS};

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Errors raised by the exact-arithmetic layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// A tower discriminant is not a positive square-free integer.
    NotSquareFree(i64),
    /// The square root of the proposed generator already lies in the tower.
    RedundantGenerator(i64),
    /// More generators than the supported cap.
    TowerTooLarge(usize),
    DivisionByZero,
    /// Operands belong to incompatible towers.
    TowerMismatch,
    /// Square root of zero requested.
    ZeroRadicand,
    /// A quadratic extension was requested over a radicand that is a square
    /// in the base field.
    RadicandIsSquare,
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::NotSquareFree(d) => {
                write!(f, "discriminant {d} is not a positive square-free integer")
            }
            ExactError::RedundantGenerator(d) => {
                write!(f, "sqrt({d}) already lies in the tower")
            }
            ExactError::TowerTooLarge(k) => {
                write!(f, "{k} generators exceed the supported maximum of {MAX_TOWER_GENERATORS}")
            }
            ExactError::DivisionByZero => write!(f, "division by zero"),
            ExactError::TowerMismatch => write!(f, "operands belong to incompatible field towers"),
            ExactError::ZeroRadicand => write!(f, "square root of zero requested"),
            ExactError::RadicandIsSquare => {
                write!(f, "radicand is a square in the base field; no extension needed")
            }
        }
    }
}

impl std::error::Error for ExactError {}

/// Parse a rational from `p` or `p/q` text.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Render a rational as `p` or `p/q`.
pub fn rational_to_string(r: &Rational) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
