//! Stationary points at infinity: invariant lines of the top-degree part,
//! exact spectra of the transformed linearization, the eigenvalue
//! rationality dichotomy, and property-E certification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{
    rational_kernel, FieldElem, QuadElem, QuadExt, Rational, SqrtOutcome,
};
use crate::exact::{sqrt_in_field, Eigenvalue};
use crate::poly::{char_poly, PolyVectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfinityError {
    ZeroVector,
    /// The supplied direction is not an invariant line of f⁽ᵐ⁾.
    NotInvariantLine,
    UnsupportedDimension(usize),
    /// A second quadratic extension would be required.
    ExtensionTooDeep,
    /// Two supplied directions are proportional.
    DuplicateLine(usize, usize),
}

impl fmt::Display for InfinityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfinityError::ZeroVector => write!(f, "direction must be nonzero"),
            InfinityError::NotInvariantLine => {
                write!(f, "direction is not an invariant line of the top-degree part")
            }
            InfinityError::UnsupportedDimension(n) => {
                write!(f, "eigenvalue extraction supports n <= 3, got n = {n}")
            }
            InfinityError::ExtensionTooDeep => {
                write!(f, "spectrum requires a second quadratic extension")
            }
            InfinityError::DuplicateLine(i, j) => {
                write!(f, "supplied directions {i} and {j} are proportional")
            }
        }
    }
}

impl std::error::Error for InfinityError {}

/// Outcome of the invariant-line check f⁽ᵐ⁾(v) = γ·v.
#[derive(Clone, Debug, PartialEq)]
pub enum LineCheck {
    Line(FieldElem),
    NotInvariant,
}

/// Evaluate the top-degree part at v and decide whether the result is a
/// scalar multiple of v; the scalar is solved from the first nonzero
/// coordinate and then every coordinate is checked exactly.
pub fn verify_invariant_line(
    f: &PolyVectorField,
    v: &[FieldElem],
) -> Result<LineCheck, InfinityError> {
    if v.is_empty() || v.iter().all(FieldElem::is_zero) {
        return Err(InfinityError::ZeroVector);
    }
    let top = f.top_part();
    let w: Vec<FieldElem> = top.iter().map(|c| c.eval(v)).collect();
    let pivot = v.iter().position(|c| !c.is_zero()).unwrap();
    let gamma = w[pivot].div(&v[pivot]).expect("pivot coordinate is nonzero");
    for (wi, vi) in w.iter().zip(v) {
        if *wi != gamma.mul(vi).expect("aligned towers") {
            return Ok(LineCheck::NotInvariant);
        }
    }
    Ok(LineCheck::Line(gamma))
}

/// Lemma-2.3-style classification of a spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Eigenvalues are linearly independent over ℚ.
    Cond1,
    /// One-dimensional relation lattice spanned by positive coprime
    /// integers m with Σ mᵢλᵢ = 0.
    Cond2(Vec<BigInt>),
    Neither,
}

/// Stack the rational coordinate vectors of the eigenvalues as columns and
/// classify by the kernel: trivial kernel ⇒ Cond1; one-dimensional kernel
/// spanned by a strictly one-signed vector ⇒ Cond2 with the normalized
/// positive coprime integers; anything else ⇒ Neither.
pub fn classify_conditions(spectrum: &[Eigenvalue]) -> Classification {
    assert!(spectrum.len() >= 2, "spectrum must have length at least 2");
    let base_dim = spectrum
        .iter()
        .map(|e| match e {
            Eigenvalue::Base(x) => x.tower().dim(),
            Eigenvalue::Quad(x) => x.ext().base().dim(),
        })
        .max()
        .unwrap();
    let has_quad = spectrum.iter().any(|e| matches!(e, Eigenvalue::Quad(_)));
    let cols: Vec<Vec<Rational>> =
        spectrum.iter().map(|e| e.coordinates(base_dim, has_quad)).collect();
    let rows = cols[0].len();
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let kernel = rational_kernel(&matrix);
    match kernel.len() {
        0 => Classification::Cond1,
        1 => {
            let v = &kernel[0];
            let positive = v.iter().all(|x| x.is_positive());
            let negative = v.iter().all(|x| x.is_negative());
            if positive || negative {
                let ints: Vec<BigInt> = v
                    .iter()
                    .map(|x| {
                        debug_assert!(x.denom() == &BigInt::from(1));
                        x.numer().abs()
                    })
                    .collect();
                Classification::Cond2(ints)
            } else {
                Classification::Neither
            }
        }
        _ => Classification::Neither,
    }
}

/// Exact data collected at one stationary point at infinity. Spectra are
/// taken at the supplied representative of the line; the normalized
/// direction (first nonzero coordinate scaled to 1) is the deduplication
/// and serialization key. Rescaling the representative rescales the whole
/// spectrum by a nonzero factor, which leaves the classification
/// unchanged.
#[derive(Clone, Debug)]
pub struct InfinityPointReport {
    /// The supplied direction.
    pub direction: Vec<FieldElem>,
    /// First-nonzero-coordinate-scaled-to-1 key.
    pub direction_normalized: Vec<FieldElem>,
    /// Scalar with f⁽ᵐ⁾(v) = γ·v for the supplied direction.
    pub gamma: FieldElem,
    /// Spectrum of Df⁽ᵐ⁾(v), the known eigenvalue mγ first.
    pub dp_spectrum: Vec<Eigenvalue>,
    /// Spectrum of the transformed linearization: −γ, β₂−γ, …, βₙ−γ.
    pub inf_spectrum: Vec<Eigenvalue>,
    pub classification: Classification,
    /// All transformed eigenvalues nonzero.
    pub multiplicity_one: bool,
}

/// Scale a direction so its first nonzero coordinate is 1.
pub fn normalize_direction(v: &[FieldElem]) -> Result<Vec<FieldElem>, InfinityError> {
    let pivot = v
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(InfinityError::ZeroVector)?;
    let scale = v[pivot].inv().expect("pivot coordinate is nonzero");
    Ok(v.iter().map(|c| c.mul(&scale).expect("aligned towers")).collect())
}

/// Full spectral analysis at one invariant line (n ≤ 3): characteristic
/// polynomial of Df⁽ᵐ⁾(v), exact deflation of the known root mγ, exact
/// solution of the residual factor - adjoining √discriminant when needed -
/// and the eigenvalue shift to the transformed linearization.
pub fn infinity_spectrum(
    f: &PolyVectorField,
    v: &[FieldElem],
    precision_bits: u32,
) -> Result<InfinityPointReport, InfinityError> {
    let n = f.dim();
    if n > 3 {
        return Err(InfinityError::UnsupportedDimension(n));
    }
    if n < 2 {
        return Err(InfinityError::UnsupportedDimension(n));
    }
    let gamma = match verify_invariant_line(f, v)? {
        LineCheck::Line(g) => g,
        LineCheck::NotInvariant => return Err(InfinityError::NotInvariantLine),
    };
    let tower = f.tower();
    let direction: Vec<FieldElem> = v
        .iter()
        .map(|c| c.promote(tower).map_err(|_| InfinityError::NotInvariantLine))
        .collect::<Result<_, _>>()?;
    let direction_normalized = normalize_direction(&direction)?;
    let gamma = gamma.promote(tower).expect("gamma lies in a subtower of the field");
    let top = f.top_part();
    let top_field = PolyVectorField::new(top).expect("top part is a valid field");
    let dp = top_field.jacobian_at(&direction);
    let cp = char_poly(&dp);
    let m_gamma = gamma.scale(&Rational::from_integer(BigInt::from(f.degree())));
    let residual = crate::poly::deflate_root(&cp, &m_gamma)
        .expect("m*gamma is an eigenvalue of the Jacobian at an invariant direction");
    let mut dp_spectrum = vec![Eigenvalue::Base(m_gamma)];
    let coeffs = residual.univariate_coeffs(0);
    match coeffs.len() {
        2 => {
            // linear: t + c ⇒ root −c (n = 2)
            let root = coeffs[0].neg();
            dp_spectrum.push(Eigenvalue::Base(root));
        }
        3 => {
            // quadratic t² + p t + q with discriminant p² − 4q
            let p = &coeffs[1];
            let q = &coeffs[0];
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let disc = p
                .mul(p)
                .expect("aligned")
                .sub(&q.scale(&Rational::from_integer(BigInt::from(4))))
                .expect("aligned");
            if disc.is_zero() {
                let root = p.neg().scale(&half);
                dp_spectrum.push(Eigenvalue::Base(root.clone()));
                dp_spectrum.push(Eigenvalue::Base(root));
            } else {
                match sqrt_in_field(&disc, precision_bits).expect("nonzero discriminant") {
                    SqrtOutcome::Square(r) => {
                        let minus_p = p.neg();
                        let r1 = minus_p.add(&r).expect("aligned").scale(&half);
                        let r2 = minus_p.sub(&r).expect("aligned").scale(&half);
                        dp_spectrum.push(Eigenvalue::Base(r1));
                        dp_spectrum.push(Eigenvalue::Base(r2));
                    }
                    SqrtOutcome::NotSquare { precision_bits: bits } => {
                        let ext = QuadExt::new(disc, bits)
                            .map_err(|_| InfinityError::ExtensionTooDeep)?;
                        let u = p.neg().scale(&half);
                        let vhalf = FieldElem::from_rational(tower, half.clone());
                        dp_spectrum.push(Eigenvalue::Quad(QuadElem::new(
                            &ext,
                            u.clone(),
                            vhalf.clone(),
                        )));
                        dp_spectrum.push(Eigenvalue::Quad(QuadElem::new(&ext, u, vhalf.neg())));
                    }
                }
            }
        }
        _ => unreachable!("residual factor has degree n-1 <= 2"),
    }
    let mut inf_spectrum = vec![Eigenvalue::Base(gamma.neg())];
    for beta in &dp_spectrum[1..] {
        inf_spectrum.push(beta.sub_base(&gamma).expect("aligned towers"));
    }
    let classification = classify_conditions(&inf_spectrum);
    let multiplicity_one = inf_spectrum.iter().all(|e| !e.is_zero());
    Ok(InfinityPointReport {
        direction,
        direction_normalized,
        gamma,
        dp_spectrum,
        inf_spectrum,
        classification,
        multiplicity_one,
    })
}

/// Verdict of a property-E certification run.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Satisfied,
    /// Carries the normalized direction of a witness point classified
    /// Neither.
    Violated(Vec<String>),
    Incomplete,
}

/// Certification report over a supplied list of invariant lines.
#[derive(Clone, Debug)]
pub struct PropertyEReport {
    pub points: Vec<InfinityPointReport>,
    /// Count with multiplicity one matches (mⁿ−1)/(m−1).
    pub complete: bool,
    pub expected_count: BigInt,
    pub verdict: Verdict,
    /// Invariant-curve count bound implied by property E.
    pub curve_bound: BigInt,
    /// In dimension three the invariant-line property of top-degree
    /// invariant varieties holds automatically; recorded, not computed.
    pub property_s_note: String,
}

/// Σ_{i<n} mⁱ, the line-count bound (mⁿ−1)/(m−1) stated without division.
pub fn line_count_bound(m: u64, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    let mut power = BigInt::from(1);
    for _ in 0..n {
        acc += &power;
        power *= BigInt::from(m);
    }
    acc
}

/// Classify every supplied line and certify property E. Directions are
/// normalized; proportional duplicates are rejected; the verdict follows
/// the classification table and the completeness count.
pub fn property_e_report(
    f: &PolyVectorField,
    lines: &[Vec<FieldElem>],
    precision_bits: u32,
) -> Result<PropertyEReport, InfinityError> {
    let mut normalized: Vec<Vec<FieldElem>> = Vec::with_capacity(lines.len());
    for line in lines {
        normalized.push(normalize_direction(line)?);
    }
    for i in 0..normalized.len() {
        for j in i + 1..normalized.len() {
            if normalized[i] == normalized[j] {
                return Err(InfinityError::DuplicateLine(i, j));
            }
        }
    }
    let mut points = Vec::with_capacity(lines.len());
    for line in lines {
        points.push(infinity_spectrum(f, line, precision_bits)?);
    }
    // Deterministic order: sort by the decimal rendering of the
    // normalized direction.
    points.sort_by_key(|p| {
        p.direction_normalized
            .iter()
            .map(|c| crate::exact::decimal_string(c, 24))
            .collect::<Vec<_>>()
    });
    let expected_count = line_count_bound(f.degree(), f.dim());
    let complete = BigInt::from(points.len() as u64) == expected_count
        && points.iter().all(|p| p.multiplicity_one);
    let witness = points
        .iter()
        .find(|p| p.classification == Classification::Neither)
        .map(|p| {
            p.direction_normalized
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        });
    let verdict = match witness {
        Some(w) => Verdict::Violated(w),
        None if complete => Verdict::Satisfied,
        None => Verdict::Incomplete,
    };
    let property_s_note = if f.dim() == 3 {
        "property S holds automatically in dimension 3".to_string()
    } else {
        "property S not checked".to_string()
    };
    Ok(PropertyEReport {
        curve_bound: expected_count.clone(),
        points,
        complete,
        expected_count,
        verdict,
        property_s_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::create_tower;
    use crate::poly::MPoly;
    use std::sync::Arc;

    fn q_t() -> Arc<crate::exact::FieldTower> {
        create_tower(&[]).unwrap()
    }

    fn elem(n: i64, t: &Arc<crate::exact::FieldTower>) -> FieldElem {
        FieldElem::from_integer(t, n)
    }

    fn squares_field(t: &Arc<crate::exact::FieldTower>) -> PolyVectorField {
        let comps: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i, t).pow(2)).collect();
        PolyVectorField::new(comps).unwrap()
    }

    #[test]
    fn diagonal_square_map_spectrum() {
        let t = q_t();
        let f = squares_field(&t);
        let e1 = vec![elem(1, &t), elem(0, &t), elem(0, &t)];
        match verify_invariant_line(&f, &e1).unwrap() {
            LineCheck::Line(g) => assert!(g.is_one()),
            other => panic!("expected invariant line, got {other:?}"),
        }
        let report = infinity_spectrum(&f, &e1, 128).unwrap();
        // Dp(e1) = diag(2, 0, 0): spectrum {2, 0, 0}, shifted {-1, -1, -1}
        assert_eq!(report.dp_spectrum[0], Eigenvalue::Base(elem(2, &t)));
        assert!(report.dp_spectrum[1..].iter().all(|e| e.is_zero()));
        assert!(report
            .inf_spectrum
            .iter()
            .all(|e| *e == Eigenvalue::Base(elem(-1, &t))));
        assert_eq!(report.classification, Classification::Neither);
        assert!(report.multiplicity_one);
    }

    #[test]
    fn not_invariant_and_zero_vector() {
        let t = q_t();
        let f = squares_field(&t);
        let v = vec![elem(1, &t), elem(2, &t), elem(0, &t)];
        assert_eq!(verify_invariant_line(&f, &v).unwrap(), LineCheck::NotInvariant);
        let z = vec![elem(0, &t); 3];
        assert_eq!(verify_invariant_line(&f, &z).unwrap_err(), InfinityError::ZeroVector);
    }

    #[test]
    fn gamma_scales_with_direction() {
        let t = q_t();
        let f = squares_field(&t);
        // v and c·v give gamma scaling by c^{m-1}
        let v = vec![elem(1, &t), elem(1, &t), elem(1, &t)];
        let cv = vec![elem(3, &t), elem(3, &t), elem(3, &t)];
        let LineCheck::Line(g1) = verify_invariant_line(&f, &v).unwrap() else {
            panic!()
        };
        let LineCheck::Line(g2) = verify_invariant_line(&f, &cv).unwrap() else {
            panic!()
        };
        assert_eq!(g2, g1.scale(&Rational::from_integer(3.into())));
    }

    #[test]
    fn classification_examples() {
        let t2 = create_tower(&[2]).unwrap();
        // {1, sqrt2, -1-sqrt2}: relation (1,1,1) ⇒ Cond2
        let one = FieldElem::one(&t2);
        let s2 = FieldElem::basis(&t2, 1);
        let spec = vec![
            Eigenvalue::Base(one.clone()),
            Eigenvalue::Base(s2.clone()),
            Eigenvalue::Base(one.add(&s2).unwrap().neg()),
        ];
        assert_eq!(
            classify_conditions(&spec),
            Classification::Cond2(vec![1.into(), 1.into(), 1.into()])
        );
        // {1, 2, 3}: kernel dimension 2 ⇒ Neither
        let t = q_t();
        let spec = vec![
            Eigenvalue::Base(elem(1, &t)),
            Eigenvalue::Base(elem(2, &t)),
            Eigenvalue::Base(elem(3, &t)),
        ];
        assert_eq!(classify_conditions(&spec), Classification::Neither);
        // {2, sqrt2+sqrt3, 2-2*sqrt5}: independent ⇒ Cond1
        let t8 = create_tower(&[2, 3, 5]).unwrap();
        let s2 = FieldElem::basis(&t8, 0b001);
        let s3 = FieldElem::basis(&t8, 0b010);
        let s5 = FieldElem::basis(&t8, 0b100);
        let spec = vec![
            Eigenvalue::Base(FieldElem::from_integer(&t8, 2)),
            Eigenvalue::Base(s2.add(&s3).unwrap()),
            Eigenvalue::Base(
                FieldElem::from_integer(&t8, 2)
                    .sub(&s5.scale(&Rational::from_integer(2.into())))
                    .unwrap(),
            ),
        ];
        assert_eq!(classify_conditions(&spec), Classification::Cond1);
    }

    #[test]
    fn classification_invariances() {
        // permutation and rational scaling leave the verdict unchanged
        let t2 = create_tower(&[2]).unwrap();
        let one = FieldElem::one(&t2);
        let s2 = FieldElem::basis(&t2, 1);
        let spec = vec![
            Eigenvalue::Base(one.clone()),
            Eigenvalue::Base(s2.clone()),
            Eigenvalue::Base(one.add(&s2).unwrap().neg()),
        ];
        let mut permuted = spec.clone();
        permuted.swap(0, 2);
        let scaled: Vec<Eigenvalue> = spec
            .iter()
            .map(|e| match e {
                Eigenvalue::Base(x) => {
                    Eigenvalue::Base(x.scale(&Rational::new(7.into(), 3.into())))
                }
                Eigenvalue::Quad(_) => unreachable!(),
            })
            .collect();
        let base = classify_conditions(&spec);
        assert_eq!(classify_conditions(&scaled), base);
        // permutation permutes the Cond2 vector accordingly; verdict kind equal
        match (base, classify_conditions(&permuted)) {
            (Classification::Cond2(a), Classification::Cond2(b)) => {
                let mut a = a;
                let mut b = b;
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
            (x, y) => panic!("expected Cond2 on both, got {x:?} and {y:?}"),
        }
    }

    #[test]
    fn cond2_relation_holds_exactly() {
        let t2 = create_tower(&[2]).unwrap();
        let one = FieldElem::one(&t2);
        let s2 = FieldElem::basis(&t2, 1);
        let lam3 = one
            .scale(&Rational::from_integer((-2).into()))
            .sub(&s2.scale(&Rational::from_integer(3.into())))
            .unwrap();
        // 2·1 + 3·sqrt2 + 1·(−2−3sqrt2) = 0
        let spec = vec![
            Eigenvalue::Base(one.clone()),
            Eigenvalue::Base(s2.clone()),
            Eigenvalue::Base(lam3.clone()),
        ];
        let Classification::Cond2(m) = classify_conditions(&spec) else {
            panic!("expected Cond2")
        };
        assert_eq!(m, vec![BigInt::from(2), BigInt::from(3), BigInt::from(1)]);
        // Σ mᵢ λᵢ = 0 exactly
        let sum = one
            .scale(&Rational::from_integer(m[0].clone()))
            .add(&s2.scale(&Rational::from_integer(m[1].clone())))
            .unwrap()
            .add(&lam3.scale(&Rational::from_integer(m[2].clone())))
            .unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn squares_map_property_e_violated() {
        let t = q_t();
        let f = squares_field(&t);
        // all seven 0/1 invariant directions of the coordinate-squares map
        let mut lines = Vec::new();
        for mask in 1u32..8 {
            lines.push(
                (0..3)
                    .map(|i| elem(((mask >> i) & 1) as i64, &t))
                    .collect::<Vec<_>>(),
            );
        }
        let report = property_e_report(&f, &lines, 128).unwrap();
        assert_eq!(report.expected_count, BigInt::from(7));
        assert!(report.complete);
        assert!(matches!(report.verdict, Verdict::Violated(_)));
        // fewer lines: incomplete (drop the violating ones? all are Neither
        // here, so use a sub-list that stays Neither-free: none exists, so
        // instead check the count logic on a field with genuine Cond1 points
        // in the integration tests).
        assert_eq!(report.curve_bound, BigInt::from(7));
    }

    #[test]
    fn duplicate_lines_rejected() {
        let t = q_t();
        let f = squares_field(&t);
        let lines = vec![
            vec![elem(1, &t), elem(0, &t), elem(0, &t)],
            vec![elem(2, &t), elem(0, &t), elem(0, &t)],
        ];
        assert_eq!(
            property_e_report(&f, &lines, 128).unwrap_err(),
            InfinityError::DuplicateLine(0, 1)
        );
    }

    #[test]
    fn line_count_bound_formula() {
        assert_eq!(line_count_bound(2, 3), BigInt::from(7));
        assert_eq!(line_count_bound(3, 3), BigInt::from(13));
        assert_eq!(line_count_bound(1, 3), BigInt::from(3));
        assert_eq!(line_count_bound(2, 2), BigInt::from(3));
    }
}
