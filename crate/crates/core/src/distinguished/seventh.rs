//! The seventh idempotent of a distinguished field via resultant
//! elimination.
//!
//! The components are rewritten as
//!   p₁ − x₁ = x₁² + A₁x₁ + A₂,
//!   p₂ − x₂ = B₁x₁ + B₂,
//!   p₃ − x₃ = C₁x₁ + C₂,
//! x₁ is eliminated through x₁ = −B₂/B₁, and the resultants of
//! F = B₁C₂ − C₁B₂ and G = B₂² − A₁B₁B₂ + A₂B₁² with respect to x₂ and x₃
//! isolate quartics whose known roots are the matching coordinates of
//! v₁, v₂, v₃; the fourth root is recovered by the root sum.
//!
//! The resultants are computed over Field[x₂,x₃,ε] with every cross-term
//! coefficient deformed as θᵢ + i·ε. For generic inputs the ε⁰ layer is the
//! plain resultant; on degenerate classes (several θᵢ = 0, where F and G
//! acquire a common factor and the plain resultant collapses to zero) the
//! lowest nonzero ε-layer reproduces the generic factor shape exactly, so
//! one code path covers both.

use num_bigint::BigInt;

use crate::exact::{FieldElem, Rational};
use crate::poly::{sylvester_resultant, DivideOutcome, MPoly};

use super::{DistinguishedError, DistinguishedField};

const X2: usize = 0;
const X3: usize = 1;
const EPS: usize = 2;

/// Outcome of the elimination pipeline, with the intermediate resultant
/// data kept for reporting.
#[derive(Clone, Debug)]
pub struct SeventhReport {
    /// The seventh idempotent (s₁, s₂, s₃), verified by p(s) = s.
    pub seventh: Vec<FieldElem>,
    /// Lowest deformation layer of the x₂-resultant, univariate in x₃.
    pub resultant_x3: MPoly,
    /// Monic quartic with roots γ₁₃, γ₂₃, γ₃₃, s₃.
    pub quartic_x3: MPoly,
    /// Lowest deformation layer of the x₃-resultant, univariate in x₂.
    pub resultant_x2: MPoly,
    /// Monic quartic with roots γ₁₂, γ₂₂, γ₃₂, s₂.
    pub quartic_x2: MPoly,
}

/// Terms of the lowest nonzero ε-layer, with ε stripped.
fn lowest_eps_layer(p: &MPoly) -> MPoly {
    let k0 = p.terms().map(|(m, _)| m.0[EPS]).min().expect("nonzero polynomial");
    let tower = p.tower();
    let terms = p.terms().filter(|(m, _)| m.0[EPS] == k0).map(|(m, c)| {
        let mut e = m.0.clone();
        e[EPS] = 0;
        (e, c.clone())
    });
    MPoly::from_terms(3, tower, terms.collect::<Vec<_>>())
}

/// Collapse a polynomial supported on a single variable of the
/// (x₂, x₃, ε) ring to a univariate polynomial.
fn to_univariate(p: &MPoly, var: usize) -> MPoly {
    let tower = p.tower();
    let terms: Vec<(Vec<u32>, FieldElem)> = p
        .terms()
        .map(|(m, c)| {
            for (i, &e) in m.0.iter().enumerate() {
                assert!(i == var || e == 0, "polynomial involves an unexpected variable");
            }
            (vec![m.0[var]], c.clone())
        })
        .collect();
    MPoly::from_terms(1, tower, terms)
}

/// Divide `p` exactly by `d`, mapping failure to DegenerateFactorization.
fn must_divide(
    p: &MPoly,
    d: &MPoly,
    what: &'static str,
) -> Result<MPoly, DistinguishedError> {
    match p.exact_divide(d).map_err(|_| DistinguishedError::DegenerateFactorization(what))? {
        DivideOutcome::Quotient(q) => Ok(q),
        DivideOutcome::NotDivisible => Err(DistinguishedError::DegenerateFactorization(what)),
    }
}

struct Eliminant {
    f: MPoly,
    g: MPoly,
    /// Deformed b-coefficients of B₁, B₂: (b₁₁', b₁₂', b₁₃') as ε-polynomials.
    b: [MPoly; 3],
}

/// Build F, G and the deformed b-coefficients over Field[x₂,x₃,ε].
fn eliminant_system(df: &DistinguishedField) -> Eliminant {
    let tower = df.tower();
    let theta = &df.theta;
    let eps = MPoly::var(3, EPS, tower);
    // θᵢ + i·ε, i = 1..9
    let pert: Vec<MPoly> = theta
        .iter()
        .enumerate()
        .map(|(i, t)| {
            MPoly::constant(3, t.clone())
                .add(&eps.mul_scalar(&Rational::from_integer(BigInt::from(i as i64 + 1))))
        })
        .collect();
    let x2 = MPoly::var(3, X2, tower);
    let x3 = MPoly::var(3, X3, tower);
    let one = MPoly::one(3, tower);
    // p1: x1x2 -> θ1, x2x3 -> θ2, x3x1 -> θ3
    let a11 = &pert[0];
    let a13 = &pert[1];
    let a12 = &pert[2];
    // p2: θ4, θ5, θ6
    let b11 = &pert[3];
    let b13 = &pert[4];
    let b12 = &pert[5];
    // p3: θ7, θ8, θ9
    let c11 = &pert[6];
    let c13 = &pert[7];
    let c12 = &pert[8];
    let a1 = a11.mul(&x2).add(&a12.mul(&x3)).sub(&one);
    let a2 = a13.mul(&x2).mul(&x3);
    let b1 = b11.mul(&x2).add(&b12.mul(&x3));
    let b2 = x2.pow(2).sub(&x2).add(&b13.mul(&x2).mul(&x3));
    let c1 = c11.mul(&x2).add(&c12.mul(&x3));
    let c2 = x3.pow(2).sub(&x3).add(&c13.mul(&x2).mul(&x3));
    let f = b1.mul(&c2).sub(&c1.mul(&b2));
    let g = b2.pow(2).sub(&a1.mul(&b1).mul(&b2)).add(&a2.mul(&b1.pow(2)));
    Eliminant { f, g, b: [b11.clone(), b12.clone(), b13.clone()] }
}

/// One elimination round: resultant with respect to `elim_var`, division by
/// the structural factors, extraction of the monic quartic, and the
/// root-sum recovery of the fourth root.
#[allow(clippy::too_many_arguments)]
fn quartic_root(
    f: &MPoly,
    g: &MPoly,
    b: &[MPoly; 3],
    elim_var: usize,
    keep_var: usize,
    known_roots: &[FieldElem; 3],
    linear_factor_sign: bool,
) -> Result<(MPoly, MPoly, FieldElem), DistinguishedError> {
    let tower = f.tower();
    let resultant = sylvester_resultant(&f.clear_denominators(), &g.clear_denominators(), elim_var)
        .map_err(|_| DistinguishedError::DegenerateFactorization("resultant degenerates"))?;
    if resultant.is_zero() {
        return Err(DistinguishedError::DegenerateFactorization("resultant vanishes"));
    }
    let x = MPoly::var(3, keep_var, tower);
    let structural = x.pow(5).mul(&x.sub(&MPoly::one(3, tower)));
    let after_structural = must_divide(&resultant, &structural, "x^5(x-1) factor absent")?;
    // linear factor (b11 b13 − b12)·x − b11 for the x₃ round,
    //               (b11 b13 − b12)·x + b12 for the x₂ round
    let slope = b[0].mul(&b[2]).sub(&b[1]);
    let linear = if linear_factor_sign {
        slope.mul(&x).add(&b[1])
    } else {
        slope.mul(&x).sub(&b[0])
    };
    let after_linear =
        must_divide(&after_structural, &linear.pow(2), "squared linear factor absent")?;
    let layer = lowest_eps_layer(&after_linear);
    if layer.degree_in(keep_var) != Some(4) || layer.degree_in(elim_var).unwrap_or(0) != 0 {
        return Err(DistinguishedError::DegenerateFactorization("residual quartic absent"));
    }
    let quartic3 = layer;
    let lead = quartic3.coeff_of_power(keep_var, 4);
    let lead_elem = lead
        .constant_coeff()
        .cloned()
        .ok_or(DistinguishedError::DegenerateFactorization("quartic leading coefficient"))?;
    let monic3 = quartic3.mul_elem(
        &lead_elem.inv().map_err(|_| {
            DistinguishedError::DegenerateFactorization("quartic leading coefficient")
        })?,
    );
    // Root sum: fourth root = −(coefficient of x³) − known roots.
    let c3 = monic3
        .coeff_of_power(keep_var, 3)
        .constant_coeff()
        .cloned()
        .unwrap_or_else(|| FieldElem::zero(tower));
    let mut fourth = c3.neg();
    for r in known_roots {
        fourth = fourth.sub(r).expect("aligned towers");
    }
    // Consistency gate: the three known roots must divide the quartic,
    // leaving exactly (x − fourth).
    let mut gate = monic3.clone();
    for r in known_roots {
        let factor = x.sub(&MPoly::constant(3, r.clone()));
        gate = must_divide(&gate, &factor, "known root does not divide the quartic")?;
    }
    let expected_linear = x.sub(&MPoly::constant(3, fourth.clone()));
    if gate != expected_linear {
        return Err(DistinguishedError::DegenerateFactorization(
            "quotient after known roots is not the expected linear factor",
        ));
    }
    // Report the lowest layer of the resultant itself (equal to the plain
    // resultant whenever the plain one is nonzero).
    let reported = to_univariate(&lowest_eps_layer(&resultant), keep_var);
    let monic_uni = to_univariate(&monic3, keep_var);
    Ok((reported, monic_uni, fourth))
}

/// Compute the seventh idempotent. Every returned vector satisfies
/// p(s) = s exactly; failures of the expected factor shape raise
/// `DegenerateFactorization`, a vanishing eliminant denominator raises
/// `B1Vanishes`.
pub fn seventh_idempotent(df: &DistinguishedField) -> Result<SeventhReport, DistinguishedError> {
    let tower = df.tower();
    let theta = &df.theta;
    if theta[3].is_zero() && theta[5].is_zero() {
        // B1 = θ4 x2 + θ6 x3 identically zero: x1 cannot be eliminated.
        return Err(DistinguishedError::DegenerateFactorization("B1 vanishes identically"));
    }
    let sys = eliminant_system(df);
    let g13 = df.gamma.entry(0, 2).clone();
    let g23 = df.gamma.entry(1, 2).clone();
    let g33 = df.gamma.entry(2, 2).clone();
    let (res_x3, quartic_x3, s3) =
        quartic_root(&sys.f, &sys.g, &sys.b, X2, X3, &[g13, g23, g33], false)?;
    let g12 = df.gamma.entry(0, 1).clone();
    let g22 = df.gamma.entry(1, 1).clone();
    let g32 = df.gamma.entry(2, 1).clone();
    let (res_x2, quartic_x2, s2) =
        quartic_root(&sys.f, &sys.g, &sys.b, X3, X2, &[g12, g22, g32], true)?;
    // s1 = −B2(s2, s3) / B1(s2, s3) with the undeformed coefficients.
    let b1_val = theta[3]
        .mul(&s2)
        .expect("aligned")
        .add(&theta[5].mul(&s3).expect("aligned"))
        .expect("aligned");
    if b1_val.is_zero() {
        return Err(DistinguishedError::B1Vanishes);
    }
    let b2_val = s2
        .mul(&s2)
        .expect("aligned")
        .sub(&s2)
        .expect("aligned")
        .add(&theta[4].mul(&s2).expect("aligned").mul(&s3).expect("aligned"))
        .expect("aligned");
    let s1 = b2_val.neg().div(&b1_val).expect("nonzero denominator");
    let seventh = vec![s1, s2, s3];
    let seventh: Vec<FieldElem> = seventh
        .into_iter()
        .map(|c| c.promote(tower).expect("tower"))
        .collect();
    if df.field.eval(&seventh) != seventh {
        return Err(DistinguishedError::VerificationFailed("candidate is not idempotent"));
    }
    Ok(SeventhReport { seventh, resultant_x3: res_x3, quartic_x3, resultant_x2: res_x2, quartic_x2 })
}

#[cfg(test)]
mod tests {
    use super::super::{construct_distinguished, GammaSpec};
    use super::*;
    use crate::exact::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_point_seventh() {
        let gamma = GammaSpec::from_rationals([
            [q(-1), q(3), q(2)],
            [q(1), q(1), q(-2)],
            [q(0), q(1), q(-3)],
        ]);
        let df = construct_distinguished(&gamma).unwrap();
        let report = seventh_idempotent(&df).unwrap();
        // Exact idempotency is the oracle.
        assert_eq!(df.field.eval(&report.seventh), report.seventh);
        // Not proportional to any prescribed idempotent.
        for v in &df.idempotents {
            assert_ne!(&report.seventh, v);
        }
        assert_eq!(report.resultant_x3.degree(), Some(12));
        assert_eq!(report.quartic_x3.degree(), Some(4));
        assert_eq!(report.quartic_x2.degree(), Some(4));
    }

    #[test]
    fn generic_rational_samples_verify() {
        // a couple of seeded rational gamma matrices away from the
        // degenerate classes
        let gammas = [
            [[q(2), q(1), q(-1)], [q(1), q(-2), q(3)], [q(-1), q(1), q(2)]],
            [[qr(1, 2), q(1), q(2)], [q(3), qr(-1, 3), q(1)], [q(1), q(2), qr(2, 5)]],
        ];
        for rows in gammas {
            let gamma = GammaSpec::from_rationals(rows);
            let df = construct_distinguished(&gamma).unwrap();
            let report = seventh_idempotent(&df).unwrap();
            assert_eq!(df.field.eval(&report.seventh), report.seventh);
        }
    }

    #[test]
    fn repeated_known_roots_still_recovered() {
        // γ column 3 equal across rows: the quartic has a repeated known
        // root; the gate must still hold or fail loudly, never silently.
        let gamma = GammaSpec::from_rationals([
            [q(2), q(1), q(2)],
            [q(1), q(-2), q(2)],
            [q(-1), q(1), q(2)],
        ]);
        let df = construct_distinguished(&gamma).unwrap();
        match seventh_idempotent(&df) {
            Ok(report) => assert_eq!(df.field.eval(&report.seventh), report.seventh),
            Err(
                DistinguishedError::DegenerateFactorization(_) | DistinguishedError::B1Vanishes,
            ) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
}
