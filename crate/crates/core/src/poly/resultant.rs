//! Sylvester resultants of multivariate polynomials viewed as univariate in
//! one variable with polynomial coefficients.

use super::matrix::det_mpoly_matrix;
use super::{MPoly, PolyError};

/// Determinant of the Sylvester matrix of `p` and `q` with respect to
/// variable `var`. Both inputs must have positive degree in `var`; the
/// result does not involve `var`.
pub fn sylvester_resultant(p: &MPoly, q: &MPoly, var: usize) -> Result<MPoly, PolyError> {
    sylvester_resultant_formal(p, q, var, None, None)
}

/// Sylvester determinant at prescribed formal degrees (used when leading
/// coefficients may specialize to zero but the generic matrix shape must be
/// kept). `None` means the true degree.
pub fn sylvester_resultant_formal(
    p: &MPoly,
    q: &MPoly,
    var: usize,
    formal_dp: Option<u32>,
    formal_dq: Option<u32>,
) -> Result<MPoly, PolyError> {
    if p.nvars() != q.nvars() {
        return Err(PolyError::DimensionMismatch);
    }
    let dp = formal_dp.unwrap_or_else(|| p.degree_in(var).unwrap_or(0)) as usize;
    let dq = formal_dq.unwrap_or_else(|| q.degree_in(var).unwrap_or(0)) as usize;
    if dp == 0 || dq == 0 {
        return Err(PolyError::DegenerateInVar);
    }
    let tower = if p.tower().dim() >= q.tower().dim() { p.tower() } else { q.tower() };
    let p = p.promote(tower)?;
    let q = q.promote(tower)?;
    let nvars = p.nvars();
    let pc: Vec<MPoly> = (0..=dp).map(|j| p.coeff_of_power(var, j as u32)).collect();
    let qc: Vec<MPoly> = (0..=dq).map(|j| q.coeff_of_power(var, j as u32)).collect();
    let size = dp + dq;
    let zero = MPoly::zero(nvars, tower);
    let mut rows = Vec::with_capacity(size);
    // dq rows of p-coefficients, then dp rows of q-coefficients, highest
    // power first.
    for shift in 0..dq {
        let mut row = vec![zero.clone(); size];
        for (j, c) in pc.iter().enumerate() {
            row[shift + dp - j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![zero.clone(); size];
        for (j, c) in qc.iter().enumerate() {
            row[shift + dq - j] = c.clone();
        }
        rows.push(row);
    }
    let det = det_mpoly_matrix(&rows, nvars, tower);
    debug_assert_eq!(det.degree_in(var).unwrap_or(0), 0, "resultant must not involve the eliminated variable");
    Ok(det)
}
