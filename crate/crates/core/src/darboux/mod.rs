//! Semi-invariant verification, bounded search through the bilinear
//! cofactor system, Jacobi-multiplier verification, and degree-bound
//! reports.

pub mod bounds;
mod buchberger;
mod search;

use std::fmt;

use crate::poly::{DivideOutcome, MPoly, PolyVectorField};
use crate::exact::Rational;

pub use bounds::{bounds_report, BoundsInput, BoundsReport, CheckStatus};
pub use buchberger::{buchberger, reduce, EliminationBudget};
pub use search::{search_semi_invariants, SearchOutput};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DarbouxError {
    ConstantInput,
    /// Factor at the given index failed semi-invariant verification.
    FactorNotSemiInvariant(usize),
    /// The search operates over ℚ only; verification works over any tower.
    SearchRequiresRationalField,
}

impl fmt::Display for DarbouxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DarbouxError::ConstantInput => write!(f, "polynomial must be nonconstant"),
            DarbouxError::FactorNotSemiInvariant(i) => {
                write!(f, "factor {i} is not a semi-invariant")
            }
            DarbouxError::SearchRequiresRationalField => {
                write!(f, "search supports rational coefficient fields only")
            }
        }
    }
}

impl std::error::Error for DarbouxError {}

/// A verified semi-invariant: X_f(ψ) = λ·ψ holds exactly and
/// deg λ ≤ m − 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiInvariant {
    pub psi: MPoly,
    pub cofactor: MPoly,
    pub degree: u64,
}

/// Outcome of a verification attempt.
#[derive(Clone, Debug, PartialEq)]
pub enum SemiOutcome {
    Verified(SemiInvariant),
    NotSemiInvariant,
}

/// Compute X_f(ψ) and attempt exact division by ψ; the cofactor degree
/// bound deg λ ≤ m − 1 is forced by the degree count and asserted.
pub fn verify_semi_invariant(
    f: &PolyVectorField,
    psi: &MPoly,
) -> Result<SemiOutcome, DarbouxError> {
    if psi.is_constant() {
        return Err(DarbouxError::ConstantInput);
    }
    let lie = f.lie_derivative(psi).map_err(|_| DarbouxError::ConstantInput)?;
    match lie.exact_divide(psi).expect("psi is nonzero") {
        DivideOutcome::Quotient(cofactor) => {
            let m = f.degree();
            debug_assert!(
                cofactor.degree().map_or(true, |d| m >= 1 && d <= m - 1),
                "cofactor degree must be at most m-1"
            );
            Ok(SemiOutcome::Verified(SemiInvariant {
                degree: psi.degree().unwrap(),
                psi: psi.clone(),
                cofactor,
            }))
        }
        DivideOutcome::NotDivisible => Ok(SemiOutcome::NotSemiInvariant),
    }
}

/// Outcome of the Jacobi-multiplier identity check for
/// σ = (Π φᵢ^{dᵢ})⁻¹: Valid exactly when Σ dᵢλᵢ = div f.
#[derive(Clone, Debug, PartialEq)]
pub enum MultiplierOutcome {
    Valid,
    /// Carries the nonzero residual Σ dᵢλᵢ − div f.
    Invalid(MPoly),
}

/// Verify the multiplier identity for a product of semi-invariant powers
/// with rational exponents. Every factor must verify first; its cofactor
/// enters the residual with its exponent.
pub fn verify_jacobi_multiplier(
    f: &PolyVectorField,
    factors: &[(MPoly, Rational)],
) -> Result<MultiplierOutcome, DarbouxError> {
    let mut sum = MPoly::zero(f.dim(), f.tower());
    for (i, (phi, d)) in factors.iter().enumerate() {
        match verify_semi_invariant(f, phi)? {
            SemiOutcome::Verified(si) => {
                sum = sum.add(&si.cofactor.mul_scalar(d));
            }
            SemiOutcome::NotSemiInvariant => {
                return Err(DarbouxError::FactorNotSemiInvariant(i));
            }
        }
    }
    let residual = sum.sub(&f.divergence());
    if residual.is_zero() {
        Ok(MultiplierOutcome::Valid)
    } else {
        Ok(MultiplierOutcome::Invalid(residual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{create_tower, FieldElem};

    fn q_t() -> std::sync::Arc<crate::exact::FieldTower> {
        create_tower(&[]).unwrap()
    }

    #[test]
    fn coordinate_of_diagonal_field_verifies() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![
            x1.clone(),
            x2.mul_scalar(&Rational::from_integer(2.into())),
        ])
        .unwrap();
        match verify_semi_invariant(&f, &x1).unwrap() {
            SemiOutcome::Verified(si) => {
                assert_eq!(si.cofactor, MPoly::one(2, &t));
                assert_eq!(si.degree, 1);
            }
            other => panic!("expected Verified, got {other:?}"),
        }
    }

    #[test]
    fn first_integral_has_zero_cofactor() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x2.clone(), x1.neg()]).unwrap();
        let r2 = x1.mul(&x1).add(&x2.mul(&x2));
        match verify_semi_invariant(&f, &r2).unwrap() {
            SemiOutcome::Verified(si) => assert!(si.cofactor.is_zero()),
            other => panic!("expected Verified, got {other:?}"),
        }
    }

    #[test]
    fn shifted_coordinate_fails() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x1.clone(), x2.clone()]).unwrap();
        let psi = x1.add(&MPoly::one(2, &t));
        assert_eq!(verify_semi_invariant(&f, &psi).unwrap(), SemiOutcome::NotSemiInvariant);
        assert_eq!(
            verify_semi_invariant(&f, &MPoly::one(2, &t)).unwrap_err(),
            DarbouxError::ConstantInput
        );
    }

    #[test]
    fn diagonal_multiplier_valid() {
        // f = diag(λ1, λ2, λ3) x with all coordinates as factors, d = 1
        let t = q_t();
        let lams = [3i64, -1, 5];
        let comps: Vec<MPoly> = (0..3)
            .map(|i| {
                MPoly::var(3, i, &t).mul_scalar(&Rational::from_integer(lams[i].into()))
            })
            .collect();
        let f = PolyVectorField::new(comps).unwrap();
        let one = Rational::from_integer(1.into());
        let factors: Vec<(MPoly, Rational)> =
            (0..3).map(|i| (MPoly::var(3, i, &t), one.clone())).collect();
        assert_eq!(verify_jacobi_multiplier(&f, &factors).unwrap(), MultiplierOutcome::Valid);
        // doubled exponents: residual equals div f
        let doubled: Vec<(MPoly, Rational)> = factors
            .iter()
            .map(|(p, d)| (p.clone(), d * Rational::from_integer(2.into())))
            .collect();
        match verify_jacobi_multiplier(&f, &doubled).unwrap() {
            MultiplierOutcome::Invalid(residual) => assert_eq!(residual, f.divergence()),
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn non_semi_invariant_factor_rejected() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x1.clone(), x2.clone()]).unwrap();
        let bad = x1.add(&MPoly::constant(2, FieldElem::from_integer(&t, 1)));
        let factors = vec![(bad, Rational::from_integer(1.into()))];
        assert_eq!(
            verify_jacobi_multiplier(&f, &factors).unwrap_err(),
            DarbouxError::FactorNotSemiInvariant(0)
        );
    }
}
