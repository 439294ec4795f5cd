//! Homogenization, special and general Poincaré transforms of polynomials
//! and vector fields, and the scaling-symmetry reduction of dimension.

use std::fmt;
use std::sync::Arc;

use crate::exact::{FieldElem, FieldTower};
use crate::poly::{FieldMatrix, MPoly, PolyVectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    ZeroPolynomial,
    ZeroVector,
    NotHomogeneous,
    DimensionMismatch,
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::ZeroPolynomial => write!(f, "zero polynomial has no transform"),
            TransformError::ZeroVector => write!(f, "direction must be nonzero"),
            TransformError::NotHomogeneous => write!(f, "field must be homogeneous"),
            TransformError::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

impl std::error::Error for TransformError {}

/// Chart at infinity for a direction v: an invertible matrix T with
/// T·v = e₁, together with its inverse. The construction is deterministic:
/// permute a nonzero coordinate into slot 1, then invert the
/// column-replacement basis [v', e₂, …, eₙ].
#[derive(Clone, Debug)]
pub struct PoincareChart {
    direction: Vec<FieldElem>,
    t: FieldMatrix,
    t_inv: FieldMatrix,
}

impl PoincareChart {
    pub fn new(direction: &[FieldElem]) -> Result<Self, TransformError> {
        let n = direction.len();
        if n == 0 || direction.iter().all(FieldElem::is_zero) {
            return Err(TransformError::ZeroVector);
        }
        let tower = Arc::clone(direction[0].tower());
        let pivot = direction.iter().position(|c| !c.is_zero()).unwrap();
        // v' = P v with the pivot coordinate swapped into slot 0.
        let mut v = direction.to_vec();
        v.swap(0, pivot);
        // M = [v', e2, …, en]; M^{-1} maps v' to e1.
        let rows: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == 0 {
                            v[i].clone()
                        } else if i == j {
                            FieldElem::one(&tower)
                        } else {
                            FieldElem::zero(&tower)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = FieldMatrix::from_rows(rows);
        let m_inv = m.inverse().expect("column-replacement basis is invertible");
        // T = M^{-1} P, T^{-1} = P M (the swap is self-inverse).
        let p_rows: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let target = if i == 0 {
                            pivot
                        } else if i == pivot {
                            0
                        } else {
                            i
                        };
                        if j == target {
                            FieldElem::one(&tower)
                        } else {
                            FieldElem::zero(&tower)
                        }
                    })
                    .collect()
            })
            .collect();
        let p = FieldMatrix::from_rows(p_rows);
        let t = m_inv.matmul(&p);
        let t_inv = p.matmul(&m);
        // Tv = e1 exactly.
        let image = t.apply(direction).expect("aligned towers");
        debug_assert!(image[0].is_one() && image[1..].iter().all(FieldElem::is_zero));
        Ok(PoincareChart { direction: direction.to_vec(), t, t_inv })
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn direction(&self) -> &[FieldElem] {
        &self.direction
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.t
    }

    pub fn matrix_inverse(&self) -> &FieldMatrix {
        &self.t_inv
    }

    fn tower(&self) -> &Arc<FieldTower> {
        self.direction[0].tower()
    }
}

/// Linear images xᵢ ↦ Σⱼ Mᵢⱼ xⱼ for polynomial composition.
fn linear_images(m: &FieldMatrix) -> Vec<MPoly> {
    let n = m.size();
    let tower = m.tower();
    (0..n)
        .map(|i| {
            let mut p = MPoly::zero(n, tower);
            for j in 0..n {
                p = p.add(&MPoly::var(n, j, tower).mul_elem(m.entry(i, j)));
            }
            p
        })
        .collect()
}

/// Homogenization with respect to a fresh last variable:
/// Σⱼ ψ⁽ʲ⁾(x)·x_{n+1}^{r−j}, homogeneous of the input's degree.
pub fn homogenize(psi: &MPoly) -> Result<MPoly, TransformError> {
    let r = psi.degree().ok_or(TransformError::ZeroPolynomial)?;
    Ok(homogenize_to(psi, r))
}

/// Homogenize to a prescribed degree ≥ deg ψ.
pub fn homogenize_to(psi: &MPoly, degree: u64) -> MPoly {
    let n = psi.nvars();
    let lifted = psi.insert_var(n);
    let tower = psi.tower();
    let mut out = MPoly::zero(n + 1, tower);
    for d in 0..=psi.degree().unwrap_or(0) {
        let part = lifted.homogeneous_part(d);
        if part.is_zero() {
            continue;
        }
        let factor = MPoly::var(n + 1, n, tower).pow((degree - d) as u32);
        out = out.add(&part.mul(&factor));
    }
    out
}

/// Poincaré transform of a polynomial with respect to the chart direction:
/// substitute 1 for the first variable of the homogenization of ψ∘T⁻¹.
/// The result lives in n variables (x₂,…,x_{n+1} re-indexed from 0).
pub fn poincare_poly(psi: &MPoly, chart: &PoincareChart) -> Result<MPoly, TransformError> {
    if psi.nvars() != chart.dim() {
        return Err(TransformError::DimensionMismatch);
    }
    if psi.is_zero() {
        return Err(TransformError::ZeroPolynomial);
    }
    let psi = psi
        .promote(chart.tower())
        .map_err(|_| TransformError::DimensionMismatch)?;
    let composed = psi.compose(&linear_images(chart.matrix_inverse()));
    let tilde = homogenize(&composed)?;
    let one = FieldElem::one(chart.tower());
    Ok(tilde.substitute(0, &one).remove_var(0))
}

/// Special/general Poincaré transform of a vector field: with g the
/// degree-m homogenization of T∘f∘T⁻¹ and h = g(1, x₂,…,x_{n+1}), the
/// transform has components −h₁·xⱼ + hⱼ for j = 2..n and −h₁·x_{n+1}.
pub fn poincare_field(
    f: &PolyVectorField,
    chart: &PoincareChart,
) -> Result<PolyVectorField, TransformError> {
    let n = f.dim();
    if n != chart.dim() {
        return Err(TransformError::DimensionMismatch);
    }
    if f.is_zero() {
        return Err(TransformError::ZeroPolynomial);
    }
    let tower = chart.tower();
    let m = f.degree();
    let images = linear_images(chart.matrix_inverse());
    let t = chart.matrix();
    // Conjugated components (T f T^{-1})_i = Σ_j T_ij · (f_j ∘ T^{-1}).
    let composed: Vec<MPoly> = f
        .components()
        .iter()
        .map(|c| {
            c.promote(tower)
                .map_err(|_| TransformError::DimensionMismatch)
                .map(|p| p.compose(&images))
        })
        .collect::<Result<_, _>>()?;
    let conjugated: Vec<MPoly> = (0..n)
        .map(|i| {
            let mut acc = MPoly::zero(n, tower);
            for (j, comp) in composed.iter().enumerate() {
                acc = acc.add(&comp.mul_elem(t.entry(i, j)));
            }
            acc
        })
        .collect();
    let one = FieldElem::one(tower);
    // h_i = g_i(1, x2,…,x_{n+1}) in n variables.
    let h: Vec<MPoly> = conjugated
        .iter()
        .map(|c| homogenize_to(c, m).substitute(0, &one).remove_var(0))
        .collect();
    let mut comps = Vec::with_capacity(n);
    for j in 0..n - 1 {
        // index j holds x_{j+2}
        let xj = MPoly::var(n, j, tower);
        comps.push(h[0].neg().mul(&xj).add(&h[j + 1]));
    }
    let xlast = MPoly::var(n, n - 1, tower);
    comps.push(h[0].neg().mul(&xlast));
    PolyVectorField::new(comps).map_err(|_| TransformError::DimensionMismatch)
}

/// Scaling-symmetry reduction of a homogeneous field:
/// qᵢ(y) = pᵢ(y,1) − yᵢ·pₙ(y,1) in n−1 variables.
pub fn reduce_dim(p: &PolyVectorField) -> Result<PolyVectorField, TransformError> {
    let n = p.dim();
    if n < 2 {
        return Err(TransformError::DimensionMismatch);
    }
    if !p.is_homogeneous() {
        return Err(TransformError::NotHomogeneous);
    }
    let tower = p.tower();
    let one = FieldElem::one(tower);
    let dehom: Vec<MPoly> = p
        .components()
        .iter()
        .map(|c| c.substitute(n - 1, &one).remove_var(n - 1))
        .collect();
    let comps: Vec<MPoly> = (0..n - 1)
        .map(|i| {
            let yi = MPoly::var(n - 1, i, tower);
            dehom[i].sub(&yi.mul(&dehom[n - 1]))
        })
        .collect();
    PolyVectorField::new(comps).map_err(|_| TransformError::DimensionMismatch)
}

/// Inverse of the special transform for test purposes: rebuild the
/// degree-r polynomial whose transform at e₁ is `star`.
pub fn poincare_recover(star: &MPoly, r: u64) -> Result<MPoly, TransformError> {
    let n = star.nvars(); // variables x2..x_{n+1}
    let tower = star.tower();
    let mut out = MPoly::zero(n + 1, tower);
    for (mono, c) in star.terms() {
        let d = mono.total_degree();
        if d > r {
            return Err(TransformError::NotHomogeneous);
        }
        let mut exp = Vec::with_capacity(n + 1);
        exp.push((r - d) as u32);
        exp.extend_from_slice(&mono.0);
        out = out.add(&MPoly::from_terms(n + 1, tower, [(exp, c.clone())]));
    }
    let one = FieldElem::one(tower);
    Ok(out.substitute(n, &one).remove_var(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::create_tower;

    fn e1(n: usize, t: &Arc<FieldTower>) -> Vec<FieldElem> {
        (0..n)
            .map(|i| if i == 0 { FieldElem::one(t) } else { FieldElem::zero(t) })
            .collect()
    }

    #[test]
    fn homogenize_examples() {
        let t = create_tower(&[]).unwrap();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        // x1^2 + x2 -> x1^2 + x2 x3
        let p = x1.pow(2).add(&x2);
        let h = homogenize(&p).unwrap();
        let x1_3 = MPoly::var(3, 0, &t);
        let x2_3 = MPoly::var(3, 1, &t);
        let x3_3 = MPoly::var(3, 2, &t);
        assert_eq!(h, x1_3.pow(2).add(&x2_3.mul(&x3_3)));
        assert!(h.is_homogeneous());
        // setting the fresh variable to 1 recovers the input
        let back = h.substitute(2, &FieldElem::one(&t)).remove_var(2);
        assert_eq!(back, p);
        // homogeneous input stays itself
        let q = x1.mul(&x2);
        assert_eq!(homogenize(&q).unwrap(), MPoly::var(3, 0, &t).mul(&MPoly::var(3, 1, &t)));
        // x1 + 1 -> x1 + x2 (here n = 1)
        let y = MPoly::var(1, 0, &t);
        let lin = y.add(&MPoly::one(1, &t));
        assert_eq!(homogenize(&lin).unwrap(), MPoly::var(2, 0, &t).add(&MPoly::var(2, 1, &t)));
        assert_eq!(homogenize(&MPoly::zero(2, &t)).unwrap_err(), TransformError::ZeroPolynomial);
    }

    #[test]
    fn poincare_poly_examples() {
        let t = create_tower(&[]).unwrap();
        let chart = PoincareChart::new(&e1(2, &t)).unwrap();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        // x1 -> 1
        assert_eq!(poincare_poly(&x1, &chart).unwrap(), MPoly::one(2, &t));
        // x2 -> x2 (first result variable), vanishing at 0
        let tx2 = poincare_poly(&x2, &chart).unwrap();
        assert_eq!(tx2, MPoly::var(2, 0, &t));
        // x1^2 + x2 -> 1 + x2 x3
        let p = x1.pow(2).add(&x2);
        let tp = poincare_poly(&p, &chart).unwrap();
        let y1 = MPoly::var(2, 0, &t); // x2
        let y2 = MPoly::var(2, 1, &t); // x3
        assert_eq!(tp, MPoly::one(2, &t).add(&y1.mul(&y2)));
    }

    #[test]
    fn poincare_field_examples() {
        let t = create_tower(&[]).unwrap();
        let chart = PoincareChart::new(&e1(2, &t)).unwrap();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        // (x1^2, x1 x2) -> (0, -x3)
        let f = PolyVectorField::new(vec![x1.pow(2), x1.mul(&x2)]).unwrap();
        let tf = poincare_field(&f, &chart).unwrap();
        assert!(tf.component(0).is_zero());
        assert_eq!(tf.component(1), &MPoly::var(2, 1, &t).neg());
        // linear (x1, x2) -> (0, -x3) as well
        let lin = PolyVectorField::new(vec![x1.clone(), x2.clone()]).unwrap();
        let tlin = poincare_field(&lin, &chart).unwrap();
        assert!(tlin.component(0).is_zero());
        assert_eq!(tlin.component(1), &MPoly::var(2, 1, &t).neg());
    }

    #[test]
    fn last_component_keeps_infinity_invariant() {
        // structural: the last component is always divisible by x_{n+1}
        let t = create_tower(&[]).unwrap();
        let x1 = MPoly::var(3, 0, &t);
        let x2 = MPoly::var(3, 1, &t);
        let x3 = MPoly::var(3, 2, &t);
        let f = PolyVectorField::new(vec![
            x1.pow(2).add(&x2.mul(&x3)),
            x2.pow(2).sub(&x1.mul(&x3)),
            x3.pow(2),
        ])
        .unwrap();
        let chart = PoincareChart::new(&e1(3, &t)).unwrap();
        let tf = poincare_field(&f, &chart).unwrap();
        let last = tf.component(2);
        let xl = MPoly::var(3, 2, &t);
        assert!(matches!(
            last.exact_divide(&xl).unwrap(),
            crate::poly::DivideOutcome::Quotient(_)
        ));
    }

    #[test]
    fn reduce_dim_examples() {
        let t = create_tower(&[]).unwrap();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        // (x1^2, x2^2) -> y^2 - y
        let p = PolyVectorField::new(vec![x1.pow(2), x2.pow(2)]).unwrap();
        let q = reduce_dim(&p).unwrap();
        let y = MPoly::var(1, 0, &t);
        assert_eq!(q.component(0), &y.pow(2).sub(&y));
        // Euler field x·ℓ reduces to rest
        let ell = x1.add(&x2.mul_scalar(&crate::exact::Rational::from_integer(2.into())));
        let euler = PolyVectorField::new(vec![x1.mul(&ell), x2.mul(&ell)]).unwrap();
        let reduced = reduce_dim(&euler).unwrap();
        assert!(reduced.is_zero());
        // inhomogeneous input rejected
        let bad = PolyVectorField::new(vec![x1.pow(2).add(&x2), x2.pow(2)]).unwrap();
        assert_eq!(reduce_dim(&bad).unwrap_err(), TransformError::NotHomogeneous);
    }

    #[test]
    fn chart_for_general_direction() {
        let t = create_tower(&[2]).unwrap();
        let s2 = FieldElem::basis(&t, 1);
        let v = vec![s2.clone(), FieldElem::one(&t), FieldElem::zero(&t)];
        let chart = PoincareChart::new(&v).unwrap();
        let image = chart.matrix().apply(&v).unwrap();
        assert!(image[0].is_one());
        assert!(image[1].is_zero() && image[2].is_zero());
        // zero-first-coordinate direction goes through the permutation path
        let w = vec![FieldElem::zero(&t), s2.clone(), FieldElem::one(&t)];
        let chart_w = PoincareChart::new(&w).unwrap();
        let image_w = chart_w.matrix().apply(&w).unwrap();
        assert!(image_w[0].is_one());
        assert!(image_w[1].is_zero() && image_w[2].is_zero());
        assert_eq!(
            PoincareChart::new(&[FieldElem::zero(&t)]).unwrap_err(),
            TransformError::ZeroVector
        );
    }

    #[test]
    fn recovery_round_trip() {
        let t = create_tower(&[]).unwrap();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let chart = PoincareChart::new(&e1(2, &t)).unwrap();
        for p in [
            x1.pow(2).add(&x2),
            x1.pow(3).add(&x1.mul(&x2)).add(&MPoly::one(2, &t)),
            x1.clone(),
        ] {
            let r = p.degree().unwrap();
            let star = poincare_poly(&p, &chart).unwrap();
            let back = poincare_recover(&star, r).unwrap();
            assert_eq!(back, p);
        }
    }
}
