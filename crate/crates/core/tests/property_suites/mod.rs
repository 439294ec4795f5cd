//! Invariant-based property suites, each run on at least 200 seeded
//! instances with zero tolerance. Shared by the acceptance gate.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use invariant_algebra::darboux::{verify_semi_invariant, SemiOutcome};
use invariant_algebra::distinguished::{construct_distinguished, DistinguishedField, GammaSpec};
use invariant_algebra::exact::{
    create_tower, rational_kernel, rational_rank, sqrt_in_field, FieldElem, FieldTower, Rational,
    SqrtOutcome,
};
use invariant_algebra::infinity::{normalize_direction, verify_invariant_line, LineCheck};
use invariant_algebra::parse_io::{parse_poly, print_poly, ParseContext};
use invariant_algebra::poly::{char_poly, deflate_root, DivideOutcome, MPoly, PolyVectorField};
use invariant_algebra::transform::{
    homogenize_to, poincare_field, poincare_poly, reduce_dim, PoincareChart,
};

fn rat(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Rational::new(n.into(), d.into())
}

fn nonzero_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let r = rat(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

fn rand_elem(rng: &mut ChaCha8Rng, tower: &Arc<FieldTower>, bound: i64) -> FieldElem {
    FieldElem::from_coords(tower, (0..tower.dim()).map(|_| rat(rng, bound)).collect())
}

fn rand_nonzero_elem(rng: &mut ChaCha8Rng, tower: &Arc<FieldTower>, bound: i64) -> FieldElem {
    loop {
        let e = rand_elem(rng, tower, bound);
        if !e.is_zero() {
            return e;
        }
    }
}

fn rand_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    tower: &Arc<FieldTower>,
    max_deg: u64,
    terms: usize,
) -> MPoly {
    let mut p = MPoly::zero(nvars, tower);
    for _ in 0..terms {
        let mut exp = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            exp[rng.gen_range(0..nvars)] += 1;
        }
        let coeff = rand_elem(rng, tower, 6);
        p = p.add(&MPoly::from_terms(nvars, tower, [(exp, coeff)]));
    }
    p
}

fn rand_nonzero_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    tower: &Arc<FieldTower>,
    max_deg: u64,
    terms: usize,
) -> MPoly {
    loop {
        let p = rand_poly(rng, nvars, tower, max_deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random field with all three coordinate planes invariant
/// (γ13 = γ21 = γ32 = 0), retrying until the construction succeeds.
fn rand_plane_invariant_field(rng: &mut ChaCha8Rng) -> DistinguishedField {
    loop {
        let z = Rational::zero();
        let rows = [
            [nonzero_rat(rng, 8), nonzero_rat(rng, 8), z.clone()],
            [z.clone(), nonzero_rat(rng, 8), nonzero_rat(rng, 8)],
            [nonzero_rat(rng, 8), z.clone(), nonzero_rat(rng, 8)],
        ];
        if let Ok(df) = construct_distinguished(&GammaSpec::from_rationals(rows)) {
            return df;
        }
    }
}

fn rand_distinguished_field(rng: &mut ChaCha8Rng) -> DistinguishedField {
    loop {
        let rows = [
            [nonzero_rat(rng, 8), nonzero_rat(rng, 8), nonzero_rat(rng, 8)],
            [nonzero_rat(rng, 8), nonzero_rat(rng, 8), nonzero_rat(rng, 8)],
            [nonzero_rat(rng, 8), nonzero_rat(rng, 8), nonzero_rat(rng, 8)],
        ];
        if let Ok(df) = construct_distinguished(&GammaSpec::from_rationals(rows)) {
            return df;
        }
    }
}

/// X_f(ψ₁ψ₂) = X_f(ψ₁)ψ₂ + ψ₁X_f(ψ₂) on randomized fields and inputs.
pub fn derivation_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let towers = [create_tower(&[]).unwrap(), create_tower(&[2, 3]).unwrap()];
    let mut checked = 0;
    while checked < 200 {
        let tower = &towers[checked % towers.len()];
        let n = rng.gen_range(2..=3);
        let comps: Vec<MPoly> =
            (0..n).map(|_| rand_poly(&mut rng, n, tower, 2, 3)).collect();
        let Ok(f) = PolyVectorField::new(comps) else { continue };
        let psi1 = rand_poly(&mut rng, n, tower, 2, 3);
        let psi2 = rand_poly(&mut rng, n, tower, 2, 3);
        let lhs = f.lie_derivative(&psi1.mul(&psi2)).unwrap();
        let rhs = f
            .lie_derivative(&psi1)
            .unwrap()
            .mul(&psi2)
            .add(&psi1.mul(&f.lie_derivative(&psi2).unwrap()));
        assert_eq!(lhs, rhs, "derivation law failed at instance {checked}");
        checked += 1;
    }
}

/// For verified semi-invariants ψ₁, ψ₂ the product has cofactor λ₁ + λ₂.
pub fn cofactor_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(802);
    let mut checked = 0;
    while checked < 200 {
        let df = rand_plane_invariant_field(&mut rng);
        let t = df.tower().clone();
        let coords: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i, &t)).collect();
        for i in 0..3 {
            for j in 0..3 {
                let psi1 = &coords[i];
                let psi2 = &coords[j];
                let SemiOutcome::Verified(s1) = verify_semi_invariant(&df.field, psi1).unwrap()
                else {
                    panic!("coordinate must verify")
                };
                let SemiOutcome::Verified(s2) = verify_semi_invariant(&df.field, psi2).unwrap()
                else {
                    panic!("coordinate must verify")
                };
                let product = psi1.mul(psi2);
                let lie = df.field.lie_derivative(&product).unwrap();
                match lie.exact_divide(&product).unwrap() {
                    DivideOutcome::Quotient(cof) => {
                        assert_eq!(cof, s1.cofactor.add(&s2.cofactor));
                    }
                    DivideOutcome::NotDivisible => panic!("product must divide exactly"),
                }
                checked += 1;
            }
        }
    }
}

/// ψ⁽ʳ⁾(v) = 0 exactly when the transform at v vanishes at the origin.
pub fn top_part_vanishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(803);
    let towers = [create_tower(&[]).unwrap(), create_tower(&[2, 5]).unwrap()];
    let mut checked = 0;
    while checked < 200 {
        let tower = &towers[checked % towers.len()];
        let n = rng.gen_range(2..=3);
        let psi = rand_nonzero_poly(&mut rng, n, tower, 3, 4);
        let r = psi.degree().unwrap();
        if r == 0 {
            continue;
        }
        let v: Vec<FieldElem> = (0..n).map(|_| rand_nonzero_elem(&mut rng, tower, 4)).collect();
        let top = psi.homogeneous_part(r);
        let top_at_v = top.eval(&v);
        // construct a designed vanishing instance: subtract the scaled
        // top-degree power of a coordinate with nonzero value
        let pivot = v.iter().position(|c| !c.is_zero()).unwrap();
        let pow = v[pivot].clone();
        let mut scale = FieldElem::one(tower);
        for _ in 0..r {
            scale = scale.mul(&pow).unwrap();
        }
        let adjust = MPoly::var(n, pivot, tower)
            .pow(r as u32)
            .mul_elem(&top_at_v.div(&scale).unwrap());
        let designed = psi.sub(&adjust);
        if designed.degree() == Some(r) {
            let chart = PoincareChart::new(&v).unwrap();
            let transformed = poincare_poly(&designed, &chart).unwrap();
            let origin = vec![FieldElem::zero(tower); n];
            assert!(
                transformed.eval(&origin).is_zero(),
                "designed vanishing instance must vanish at the origin"
            );
            checked += 1;
        }
        // converse on the raw polynomial
        if !top_at_v.is_zero() {
            let chart = PoincareChart::new(&v).unwrap();
            let transformed = poincare_poly(&psi, &chart).unwrap();
            let origin = vec![FieldElem::zero(tower); n];
            assert!(
                !transformed.eval(&origin).is_zero(),
                "nonvanishing top part must give nonvanishing transform at the origin"
            );
            checked += 1;
        }
    }
}

/// Characteristic polynomial of the transformed linearization equals
/// (t + γ)(t² + (p + 2γ)t + (q + pγ + γ²)) built from the Jacobian
/// spectrum data at the invariant direction.
pub fn transformed_linearization_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(804);
    let mut checked = 0;
    while checked < 200 {
        let df = rand_distinguished_field(&mut rng);
        let t = df.tower().clone();
        for v in &df.idempotents {
            let v = normalize_direction(v).unwrap();
            let LineCheck::Line(gamma) = verify_invariant_line(&df.field, &v).unwrap() else {
                panic!("idempotent direction must be invariant")
            };
            let dp = df.field.jacobian_at(&v);
            let cp = char_poly(&dp);
            let m_gamma = gamma.scale(&Rational::from_integer(2.into()));
            let residual = deflate_root(&cp, &m_gamma).expect("2γ must be an eigenvalue");
            let coeffs = residual.univariate_coeffs(0);
            let (qc, pc) = (coeffs[0].clone(), coeffs[1].clone());
            // direct route: linearization of the transformed field
            let chart = PoincareChart::new(&v).unwrap();
            let transformed = poincare_field(&df.field, &chart).unwrap();
            let direct = char_poly(&transformed.linear_part());
            // assembled route from the spectrum data
            let tt = MPoly::var(1, 0, &t);
            let lin = tt.add(&MPoly::constant(1, gamma.clone()));
            let two_gamma = gamma.scale(&Rational::from_integer(2.into()));
            let b = pc.add(&two_gamma).unwrap();
            let c = qc
                .add(&pc.mul(&gamma).unwrap())
                .unwrap()
                .add(&gamma.mul(&gamma).unwrap())
                .unwrap();
            let quad = tt
                .pow(2)
                .add(&tt.mul_elem(&b))
                .add(&MPoly::constant(1, c));
            assert_eq!(direct, lin.mul(&quad), "cross-check failed at instance {checked}");
            checked += 1;
        }
    }
}

/// Linearization of the reduced field at the projected stationary point.
/// On the representative scaled onto {x₃ = 1} the spectrum is exactly
/// v₃(β₂ − γ), v₃(β₃ − γ) with v₃ = 1; for a raw representative
/// homogeneity contributes the factor v₃^{1−m}, so for m = 2 the spectrum
/// is (β₂ − γ)/v₃, (β₃ − γ)/v₃. Both forms are checked.
pub fn reduction_spectrum_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(805);
    let mut checked = 0;
    while checked < 200 {
        let df = rand_distinguished_field(&mut rng);
        let t = df.tower().clone();
        let reduced = reduce_dim(&df.field).unwrap();
        for v in &df.idempotents {
            if v[2].is_zero() {
                continue;
            }
            let point = vec![v[0].div(&v[2]).unwrap(), v[1].div(&v[2]).unwrap()];
            let jac = reduced.jacobian_at(&point);
            let direct = char_poly(&jac);
            let tt = MPoly::var(1, 0, &t);
            // route 1: the representative on {x3 = 1}; printed form with
            // v3 = 1
            let scaled: Vec<FieldElem> =
                v.iter().map(|c| c.div(&v[2]).unwrap()).collect();
            let LineCheck::Line(gamma1) =
                verify_invariant_line(&df.field, &scaled).unwrap()
            else {
                panic!("idempotent direction must be invariant")
            };
            let dp1 = df.field.jacobian_at(&scaled);
            let cp1 = char_poly(&dp1);
            let m_gamma1 = gamma1.scale(&Rational::from_integer(2.into()));
            let res1 = deflate_root(&cp1, &m_gamma1).expect("2γ must be an eigenvalue");
            let c1 = res1.univariate_coeffs(0);
            let (qc1, pc1) = (c1[0].clone(), c1[1].clone());
            let b1 = pc1.add(&gamma1.scale(&Rational::from_integer(2.into()))).unwrap();
            let cc1 = qc1
                .add(&pc1.mul(&gamma1).unwrap())
                .unwrap()
                .add(&gamma1.mul(&gamma1).unwrap())
                .unwrap();
            let expected1 = tt.pow(2).add(&tt.mul_elem(&b1)).add(&MPoly::constant(1, cc1));
            assert_eq!(direct, expected1, "normalized-representative form failed at {checked}");
            // route 2: raw representative with the homogeneity factor
            // v3^{1−m} = 1/v3
            let LineCheck::Line(gamma) = verify_invariant_line(&df.field, v).unwrap() else {
                panic!("idempotent direction must be invariant")
            };
            let dp = df.field.jacobian_at(v);
            let cp = char_poly(&dp);
            let m_gamma = gamma.scale(&Rational::from_integer(2.into()));
            let residual = deflate_root(&cp, &m_gamma).expect("2γ must be an eigenvalue");
            let coeffs = residual.univariate_coeffs(0);
            let (qc, pc) = (coeffs[0].clone(), coeffs[1].clone());
            let factor = v[2].inv().unwrap();
            let b = pc
                .add(&gamma.scale(&Rational::from_integer(2.into())))
                .unwrap()
                .mul(&factor)
                .unwrap();
            let c = qc
                .add(&pc.mul(&gamma).unwrap())
                .unwrap()
                .add(&gamma.mul(&gamma).unwrap())
                .unwrap()
                .mul(&factor.mul(&factor).unwrap())
                .unwrap();
            let expected2 = tt.pow(2).add(&tt.mul_elem(&b)).add(&MPoly::constant(1, c));
            assert_eq!(direct, expected2, "homogeneity-corrected form failed at {checked}");
            checked += 1;
        }
    }
}

/// Transform of a verified pair (ψ, λ): ψ* is a semi-invariant of f* with
/// cofactor −r·g₁(1,…) + λ*.
pub fn semi_invariant_transport() {
    let mut rng = ChaCha8Rng::seed_from_u64(806);
    let mut checked = 0;
    while checked < 200 {
        let df = rand_plane_invariant_field(&mut rng);
        let t = df.tower().clone();
        let m = df.field.degree();
        let x: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i, &t)).collect();
        let candidates = [
            x[0].clone(),
            x[1].clone(),
            x[2].clone(),
            x[0].mul(&x[1]),
            x[0].mul(&x[2]),
            x[1].mul(&x[2]),
            x[0].mul(&x[1]).mul(&x[2]),
        ];
        let e1: Vec<FieldElem> = (0..3)
            .map(|i| if i == 0 { FieldElem::one(&t) } else { FieldElem::zero(&t) })
            .collect();
        let chart = PoincareChart::new(&e1).unwrap();
        let transformed = poincare_field(&df.field, &chart).unwrap();
        // g1(1, x2, …, x_{n+1}) re-indexed to the transform's variables
        let one = FieldElem::one(&t);
        let h1 = homogenize_to(df.field.component(0), m).substitute(0, &one).remove_var(0);
        for psi in &candidates {
            let SemiOutcome::Verified(si) = verify_semi_invariant(&df.field, psi).unwrap() else {
                panic!("candidate must verify on the invariant-plane class")
            };
            let r = si.degree;
            let psi_star = poincare_poly(psi, &chart).unwrap();
            let lambda_star = if si.cofactor.is_zero() {
                MPoly::zero(3, &t)
            } else {
                homogenize_to(&si.cofactor, m - 1).substitute(0, &one).remove_var(0)
            };
            let expected = h1
                .mul_scalar(&Rational::from_integer((r as i64).into()))
                .neg()
                .add(&lambda_star);
            let lie = transformed.lie_derivative(&psi_star).unwrap();
            match lie.exact_divide(&psi_star).unwrap() {
                DivideOutcome::Quotient(cof) => {
                    assert_eq!(cof, expected, "transport cofactor mismatch at {checked}");
                }
                DivideOutcome::NotDivisible => panic!("transform must stay a semi-invariant"),
            }
            checked += 1;
        }
    }
}

/// parse ∘ print is the identity on values, over ℚ and over the
/// degree-eight tower.
pub fn parser_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(807);
    let towers = [create_tower(&[]).unwrap(), create_tower(&[2, 3, 5]).unwrap()];
    for i in 0..1000 {
        let tower = &towers[i % towers.len()];
        let n = rng.gen_range(1..=3);
        let ctx = ParseContext::with_default_names(n, tower);
        let p = rand_poly(&mut rng, n, tower, 4, 5);
        let text = print_poly(&p, &ctx);
        let back = parse_poly(&text, &ctx).unwrap_or_else(|e| {
            panic!("printed form must re-parse, failed on `{text}`: {e}")
        });
        assert_eq!(back, p, "round trip failed on `{text}`");
    }
}

/// Field axioms on randomized triples, exact kernel laws, and the
/// square-root round trip on squares.
pub fn field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let towers = [
        create_tower(&[]).unwrap(),
        create_tower(&[2]).unwrap(),
        create_tower(&[2, 3]).unwrap(),
        create_tower(&[2, 3, 5]).unwrap(),
        create_tower(&[3, 7]).unwrap(),
    ];
    for i in 0..200 {
        let tower = &towers[i % towers.len()];
        let a = rand_elem(&mut rng, tower, 6);
        let b = rand_elem(&mut rng, tower, 6);
        let c = rand_elem(&mut rng, tower, 6);
        assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let nz = rand_nonzero_elem(&mut rng, tower, 6);
        assert!(nz.mul(&nz.inv().unwrap()).unwrap().is_one());
        // square-root round trip: whenever Square(s) comes back, s² = a
        let square = nz.mul(&nz).unwrap();
        match sqrt_in_field(&square, 256).unwrap() {
            SqrtOutcome::Square(s) => assert_eq!(s.mul(&s).unwrap(), square),
            SqrtOutcome::NotSquare { .. } => {
                panic!("square of a field element must be recognized")
            }
        }
        // kernel laws on a random rational matrix
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<Rational>> =
            (0..rows).map(|_| (0..cols).map(|_| rat(&mut rng, 5)).collect()).collect();
        let kernel = rational_kernel(&m);
        for v in &kernel {
            for row in &m {
                let dot: Rational =
                    row.iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |s, x| s + x);
                assert!(dot.is_zero(), "kernel vector must satisfy M v = 0 exactly");
            }
        }
        assert_eq!(kernel.len() + rational_rank(&m), cols);
    }
}

pub fn run_all() {
    derivation_law();
    cofactor_additivity();
    top_part_vanishing();
    transformed_linearization_cross_check();
    reduction_spectrum_relation();
    semi_invariant_transport();
    parser_round_trip();
    field_axioms();
}
