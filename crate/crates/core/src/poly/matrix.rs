//! Square matrices over a tower field: exact solve/inverse/determinant and
//! characteristic polynomials by fraction-free expansion.

use std::sync::Arc;

use crate::exact::{ExactError, FieldElem, FieldTower};

use super::MPoly;

/// Dense square matrix of field elements (Jacobians, chart matrices, the
/// idempotent matrix A).
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix {
    n: usize,
    rows: Vec<Vec<FieldElem>>,
}

impl FieldMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        FieldMatrix { n, rows }
    }

    pub fn identity(n: usize, tower: &Arc<FieldTower>) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            FieldElem::one(tower)
                        } else {
                            FieldElem::zero(tower)
                        }
                    })
                    .collect()
            })
            .collect();
        FieldMatrix { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElem {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.rows[0][0].tower()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, ExactError> {
        let mut out = Vec::with_capacity(self.n);
        for row in &self.rows {
            let mut acc = FieldElem::zero(self.tower());
            for (a, x) in row.iter().zip(v) {
                acc = acc.add(&a.mul(x)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Determinant by division-free expansion over column subsets.
    pub fn det(&self) -> FieldElem {
        let tower = self.tower();
        let polys: Vec<Vec<MPoly>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| MPoly::constant(1, c.clone())).collect())
            .collect();
        let d = det_mpoly_matrix(&polys, 1, tower);
        d.constant_coeff().cloned().unwrap_or_else(|| FieldElem::zero(tower))
    }

    /// Solve M x = rhs by Gaussian elimination with exact field division.
    /// `None` when singular.
    pub fn solve(&self, rhs: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(rhs.len(), self.n);
        let n = self.n;
        let mut a = self.rows.clone();
        let mut b = rhs.to_vec();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            b.swap(c, p);
            let pivot = a[c][c].clone();
            for j in c..n {
                a[c][j] = a[c][j].div(&pivot).expect("pivot is nonzero");
            }
            b[c] = b[c].div(&pivot).expect("pivot is nonzero");
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let factor = a[i][c].clone();
                    for j in c..n {
                        let sub = factor.mul(&a[c][j]).expect("aligned");
                        a[i][j] = a[i][j].sub(&sub).expect("aligned");
                    }
                    let sub = factor.mul(&b[c]).expect("aligned");
                    b[i] = b[i].sub(&sub).expect("aligned");
                }
            }
        }
        Some(b)
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        let n = self.n;
        let tower = Arc::clone(self.tower());
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![FieldElem::zero(&tower); n];
            e[j] = FieldElem::one(&tower);
            cols.push(self.solve(&e)?);
        }
        let rows = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        Some(FieldMatrix { n, rows })
    }

    pub fn matmul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.n, other.n);
        let tower = self.tower();
        let rows = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let mut acc = FieldElem::zero(tower);
                        for k in 0..self.n {
                            acc = acc
                                .add(&self.rows[i][k].mul(&other.rows[k][j]).expect("aligned"))
                                .expect("aligned");
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        FieldMatrix { n: self.n, rows }
    }
}

/// Division-free determinant of a square matrix of polynomials, expanding
/// row by row over used-column subsets.
pub fn det_mpoly_matrix(rows: &[Vec<MPoly>], nvars: usize, tower: &Arc<FieldTower>) -> MPoly {
    let n = rows.len();
    if n == 0 {
        return MPoly::one(nvars, tower);
    }
    assert!(rows.iter().all(|r| r.len() == n));
    let zero = MPoly::zero(nvars, tower);
    // minors[mask] = signed minor of the first popcount(mask) rows on the
    // column set `mask`.
    let mut minors: Vec<Option<MPoly>> = vec![None; 1 << n];
    minors[0] = Some(MPoly::one(nvars, tower));
    for r in 0..n {
        // Process masks with exactly r bits, extending by one column.
        let mut next: Vec<Option<MPoly>> = vec![None; 1 << n];
        for (mask, minor) in minors.iter().enumerate() {
            let Some(minor) = minor else { continue };
            if (mask as u32).count_ones() as usize != r || minor.is_zero() {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = &rows[r][c];
                if entry.is_zero() {
                    continue;
                }
                // Parity of the number of already-used columns above c.
                let sign_flips = (mask >> (c + 1)).count_ones();
                let term = minor.mul(entry);
                let term = if sign_flips % 2 == 1 { term.neg() } else { term };
                let slot = &mut next[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
        }
        minors = next;
    }
    minors[(1 << n) - 1].take().unwrap_or(zero)
}

/// Characteristic polynomial det(tI − M), monic of degree n, as a
/// univariate polynomial (one variable, index 0).
pub fn char_poly(m: &FieldMatrix) -> MPoly {
    let n = m.size();
    let tower = m.tower();
    let t = MPoly::var(1, 0, tower);
    let rows: Vec<Vec<MPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = MPoly::constant(1, m.entry(i, j).neg());
                    if i == j {
                        t.add(&entry)
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();
    det_mpoly_matrix(&rows, 1, tower)
}

/// Divide a univariate polynomial by (t − root) exactly; `None` when the
/// division leaves a remainder (root is not a root).
pub fn deflate_root(p: &MPoly, root: &FieldElem) -> Option<MPoly> {
    let coeffs = p.univariate_coeffs(0);
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return None;
    }
    let tower = p.tower();
    let mut quot = vec![FieldElem::zero(tower); deg];
    let mut carry = FieldElem::zero(tower);
    for i in (0..=deg).rev() {
        let c = coeffs[i].add(&carry.mul(root).expect("aligned")).expect("aligned");
        if i == 0 {
            if !c.is_zero() {
                return None;
            }
        } else {
            quot[i - 1] = c.clone();
            carry = c;
        }
    }
    let terms = quot
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (vec![e as u32], c));
    Some(MPoly::from_terms(1, tower, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::create_tower;

    fn q(n: i64, t: &Arc<FieldTower>) -> FieldElem {
        FieldElem::from_integer(t, n)
    }

    #[test]
    fn char_poly_of_diagonal() {
        let t = create_tower(&[]).unwrap();
        let m = FieldMatrix::from_rows(vec![
            vec![q(1, &t), q(0, &t)],
            vec![q(0, &t), q(2, &t)],
        ]);
        let cp = char_poly(&m);
        // t^2 - 3t + 2
        let tt = MPoly::var(1, 0, &t);
        let expected = tt
            .pow(2)
            .sub(&tt.mul_scalar(&crate::exact::Rational::from_integer(3.into())))
            .add(&MPoly::constant(1, q(2, &t)));
        assert_eq!(cp, expected);
    }

    #[test]
    fn char_poly_of_zero_matrix() {
        let t = create_tower(&[]).unwrap();
        let m = FieldMatrix::from_rows(vec![
            vec![q(0, &t), q(0, &t)],
            vec![q(0, &t), q(0, &t)],
        ]);
        assert_eq!(char_poly(&m), MPoly::var(1, 0, &t).pow(2));
    }

    #[test]
    fn determinant_and_inverse() {
        let t = create_tower(&[2]).unwrap();
        let s2 = FieldElem::basis(&t, 1);
        let m = FieldMatrix::from_rows(vec![
            vec![FieldElem::one(&t), s2.clone()],
            vec![s2.clone(), FieldElem::one(&t)],
        ]);
        // det = 1 - 2 = -1
        assert_eq!(m.det(), q(-1, &t));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), FieldMatrix::identity(2, &t));
        let singular = FieldMatrix::from_rows(vec![
            vec![q(1, &t), q(2, &t)],
            vec![q(2, &t), q(4, &t)],
        ]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn deflation() {
        let t = create_tower(&[]).unwrap();
        let m = FieldMatrix::from_rows(vec![
            vec![q(1, &t), q(0, &t)],
            vec![q(0, &t), q(2, &t)],
        ]);
        let cp = char_poly(&m);
        let quot = deflate_root(&cp, &q(1, &t)).unwrap();
        // remaining factor t - 2
        let tt = MPoly::var(1, 0, &t);
        assert_eq!(quot, tt.sub(&MPoly::constant(1, q(2, &t))));
        assert!(deflate_root(&cp, &q(5, &t)).is_none());
    }
}
