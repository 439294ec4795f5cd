//! Exact rational linear algebra: fraction-free (Bareiss) elimination for
//! kernels and ranks, and a plain Gaussian solver for square systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Clear denominators row by row, returning an integer matrix with the same
/// row space and kernel.
fn to_integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free Bareiss elimination to row echelon form.
///
/// Returns the echelon matrix together with the pivot column of each
/// nonzero row.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank of a rational matrix.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    bareiss_echelon(to_integer_rows(m)).1.len()
}

/// Scale a rational vector to coprime integer entries with the first
/// nonzero entry positive.
fn normalize_vector(v: Vec<Rational>) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in &v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            gcd = -gcd;
        }
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect()
}

/// Basis of the right null space of a rational matrix, computed by
/// fraction-free Gaussian elimination. Basis vectors are scaled to coprime
/// integer entries; an empty list means the kernel is trivial.
pub fn rational_kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    if cols == 0 {
        return Vec::new();
    }
    let (ech, pivots) = bareiss_echelon(to_integer_rows(m));
    let pivot_set: Vec<usize> = pivots.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rational::zero(); cols];
        v[fc] = Rational::one();
        // Back-substitute through the echelon rows.
        for (row, &pc) in pivot_set.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for c in pc + 1..cols {
                if !ech[row][c].is_zero() {
                    acc += Rational::from_integer(ech[row][c].clone()) * &v[c];
                }
            }
            v[pc] = -acc / Rational::from_integer(ech[row][pc].clone());
        }
        basis.push(normalize_vector(v));
    }
    basis
}

/// Solve the square system `M x = rhs` by rational Gaussian elimination.
/// Returns `None` when the matrix is singular.
pub fn rational_solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n) && rhs.len() == n, "square system expected");
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for j in c..=n {
            a[c][j] = &a[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in c..=n {
                    let sub = &factor * &a[c][j];
                    a[i][j] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(rational_kernel(&m).is_empty());
        assert_eq!(rational_rank(&m), 3);
    }

    #[test]
    fn one_row_kernel_dimension_two() {
        let m = mat(&[&[1, 1, -2]]);
        let basis = rational_kernel(&m);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot: Rational = v[0].clone() + v[1].clone() - q(2) * v[2].clone();
            assert!(dot.is_zero(), "kernel vector must satisfy M v = 0");
        }
        assert_eq!(basis.len() + rational_rank(&m), 3);
    }

    #[test]
    fn rank_one_kernel() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let basis = rational_kernel(&m);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![q(2), q(-1)]);
    }

    #[test]
    fn solve_square() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        let x = rational_solve(&m, &[q(5), q(10)]).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert!(rational_solve(&singular, &[q(1), q(2)]).is_none());
    }
}
