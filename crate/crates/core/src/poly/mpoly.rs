//! Sparse multivariate polynomials: exponent-vector keyed terms over a
//! tower field, graded reverse lexicographic canonical order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{FieldElem, FieldTower, Rational};

use super::PolyError;

/// Monomial: exponent vector with graded reverse lexicographic `Ord`
/// (larger in the order = later in a `BTreeMap` iteration).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        // Same degree: the monomial whose last differing exponent is
        // smaller is the larger one.
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

/// Sparse multivariate polynomial. No zero coefficients are stored; the
/// zero polynomial has an empty term map.
#[derive(Clone, Debug)]
pub struct MPoly {
    nvars: usize,
    tower: Arc<FieldTower>,
    terms: BTreeMap<Mono, FieldElem>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.tower.as_ref() == other.tower.as_ref()
            && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(nvars: usize, tower: &Arc<FieldTower>) -> Self {
        MPoly { nvars, tower: Arc::clone(tower), terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Self {
        let tower = Arc::clone(c.tower());
        let mut p = MPoly::zero(nvars, &tower);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, tower: &Arc<FieldTower>) -> Self {
        Self::constant(nvars, FieldElem::one(tower))
    }

    pub fn var(nvars: usize, i: usize, tower: &Arc<FieldTower>) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = MPoly::zero(nvars, tower);
        p.terms.insert(Mono::var(nvars, i), FieldElem::one(tower));
        p
    }

    pub fn from_terms(
        nvars: usize,
        tower: &Arc<FieldTower>,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElem)>,
    ) -> Self {
        let mut p = MPoly::zero(nvars, tower);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal nvars");
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` encodes the −∞ degree of the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Mono::total_degree).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    /// Leading term under graded reverse lex.
    pub fn leading_term(&self) -> Option<(&Mono, &FieldElem)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, mono: &Mono) -> Option<&FieldElem> {
        self.terms.get(mono)
    }

    pub fn constant_coeff(&self) -> Option<&FieldElem> {
        self.terms.get(&Mono::one(self.nvars))
    }

    fn add_term(&mut self, mono: Mono, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            Some(prev) => {
                let s = prev.add(&c).expect("aligned towers");
                if !s.is_zero() {
                    self.terms.insert(mono, s);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    /// Promote all coefficients into a larger tower.
    pub fn promote(&self, tower: &Arc<FieldTower>) -> Result<MPoly, PolyError> {
        if self.tower.as_ref() == tower.as_ref() {
            return Ok(self.clone());
        }
        let mut p = MPoly::zero(self.nvars, tower);
        for (m, c) in &self.terms {
            let pc = c.promote(tower).map_err(|_| PolyError::TowerMismatch)?;
            p.terms.insert(m.clone(), pc);
        }
        Ok(p)
    }

    fn aligned(&self, other: &MPoly) -> Result<(MPoly, MPoly), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch);
        }
        if self.tower.as_ref() == other.tower.as_ref() {
            Ok((self.clone(), other.clone()))
        } else if self.tower.is_subtower_of(&other.tower) {
            Ok((self.promote(&other.tower)?, other.clone()))
        } else if other.tower.is_subtower_of(&self.tower) {
            Ok((self.clone(), other.promote(&self.tower)?))
        } else {
            Err(PolyError::TowerMismatch)
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (mut a, b) = self.aligned(other).expect("compatible polynomials");
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            tower: Arc::clone(&self.tower),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let (a, b) = self.aligned(other).expect("compatible polynomials");
        let mut out = MPoly::zero(a.nvars, &a.tower);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca.mul(cb).expect("aligned towers"));
            }
        }
        out
    }

    pub fn mul_elem(&self, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars, &self.tower);
        }
        let mut out = MPoly::zero(self.nvars, &self.tower);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.mul(c).expect("aligned towers"));
        }
        out
    }

    pub fn mul_scalar(&self, r: &Rational) -> MPoly {
        if r.is_zero() {
            return MPoly::zero(self.nvars, &self.tower);
        }
        MPoly {
            nvars: self.nvars,
            tower: Arc::clone(&self.tower),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect(),
        }
    }

    pub fn mul_mono(&self, mono: &Mono) -> MPoly {
        MPoly {
            nvars: self.nvars,
            tower: Arc::clone(&self.tower),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one(self.nvars, &self.tower);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn partial_derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars, &self.tower);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[var] = e - 1;
            out.add_term(Mono(exp), c.scale(&Rational::from_integer(BigInt::from(e))));
        }
        out
    }

    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElem::zero(&self.tower);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]).expect("aligned towers");
                }
            }
            acc = acc.add(&term).expect("aligned towers");
        }
        acc
    }

    /// Substitute a field value for one variable; the variable slot remains
    /// but no longer occurs.
    pub fn substitute(&self, var: usize, value: &FieldElem) -> MPoly {
        let mut out = MPoly::zero(self.nvars, &self.tower);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff.mul(value).expect("aligned towers");
            }
            let mut exp = m.0.clone();
            exp[var] = 0;
            out.add_term(Mono(exp), coeff);
        }
        out
    }

    /// Drop a variable that no longer occurs, shifting later indices down.
    pub fn remove_var(&self, var: usize) -> MPoly {
        debug_assert!(self.degree_in(var).unwrap_or(0) == 0, "variable still occurs");
        let mut out = MPoly::zero(self.nvars - 1, &self.tower);
        for (m, c) in &self.terms {
            let mut exp = Vec::with_capacity(self.nvars - 1);
            for (i, &e) in m.0.iter().enumerate() {
                if i != var {
                    exp.push(e);
                }
            }
            out.add_term(Mono(exp), c.clone());
        }
        out
    }

    /// Insert a fresh unused variable slot at `pos`, shifting later indices
    /// up.
    pub fn insert_var(&self, pos: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars + 1, &self.tower);
        for (m, c) in &self.terms {
            let mut exp = Vec::with_capacity(self.nvars + 1);
            exp.extend_from_slice(&m.0[..pos]);
            exp.push(0);
            exp.extend_from_slice(&m.0[pos..]);
            out.add_term(Mono(exp), c.clone());
        }
        out
    }

    /// Evaluate the polynomial on polynomial arguments (composition).
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let (out_nvars, tower) = if let Some(first) = images.first() {
            (first.nvars, Arc::clone(&first.tower))
        } else {
            (0, Arc::clone(&self.tower))
        };
        // Memoize powers of each image.
        let mut powers: Vec<Vec<MPoly>> =
            images.iter().map(|_| vec![MPoly::one(out_nvars, &tower)]).collect();
        let mut out = MPoly::zero(out_nvars, &tower);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: u64) -> MPoly {
        let mut out = MPoly::zero(self.nvars, &self.tower);
        for (m, c) in &self.terms {
            if m.total_degree() == degree {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// All homogeneous parts 0..=deg; the parts sum back to the polynomial.
    pub fn homogeneous_parts(&self) -> Vec<MPoly> {
        let deg = self.degree().unwrap_or(0);
        (0..=deg).map(|d| self.homogeneous_part(d)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.keys().all(|m| m.total_degree() == d),
        }
    }

    /// Single-divisor leading-term division under graded reverse lex.
    /// `Quotient(q)` exactly when `self == q * divisor`.
    pub fn exact_divide(&self, divisor: &MPoly) -> Result<DivideOutcome, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let (mut rem, div) = self.aligned(divisor)?;
        let (dm, dc) = {
            let (m, c) = div.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut quot = MPoly::zero(rem.nvars, &rem.tower);
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return Ok(DivideOutcome::NotDivisible);
            }
            let qm = m.div(&dm);
            let qc = c.div(&dc).expect("division by a nonzero leading coefficient");
            let factor = MPoly::constant(rem.nvars, qc).mul_mono(&qm);
            rem = rem.sub(&factor.mul(&div));
            quot = quot.add(&factor);
        }
        Ok(DivideOutcome::Quotient(quot))
    }

    /// Multiply by the least common denominator of every rational
    /// coordinate of every coefficient, producing integer coordinates;
    /// the scalar itself is discarded (callers use this only where scalar
    /// multiples are irrelevant).
    pub fn clear_denominators(&self) -> MPoly {
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            for r in c.coords() {
                lcm = lcm.lcm(r.denom());
            }
        }
        self.mul_scalar(&Rational::from_integer(lcm))
    }

    /// Restrict an effectively-univariate polynomial to dense coefficients
    /// in the given variable. Panics when another variable occurs.
    pub fn univariate_coeffs(&self, var: usize) -> Vec<FieldElem> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![FieldElem::zero(&self.tower); deg + 1];
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                assert!(i == var || e == 0, "polynomial is not univariate in the requested variable");
            }
            out[m.0[var] as usize] = c.clone();
        }
        out
    }

    /// Coefficient of `var^power`, as a polynomial with `var` removed from
    /// its support (slot kept).
    pub fn coeff_of_power(&self, var: usize, power: u32) -> MPoly {
        let mut out = MPoly::zero(self.nvars, &self.tower);
        for (m, c) in &self.terms {
            if m.0[var] == power {
                let mut exp = m.0.clone();
                exp[var] = 0;
                out.add_term(Mono(exp), c.clone());
            }
        }
        out
    }
}

/// Outcome of [`MPoly::exact_divide`].
#[derive(Clone, Debug, PartialEq)]
pub enum DivideOutcome {
    Quotient(MPoly),
    NotDivisible,
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = crate::parse_io::ParseContext::with_default_names(self.nvars, self.tower());
        write!(f, "{}", crate::parse_io::print_poly(self, &ctx))
    }
}
