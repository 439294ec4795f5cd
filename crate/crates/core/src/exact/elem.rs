//! Elements of a multiquadratic tower, stored as exact rational coordinates
//! over the canonical subset-product basis.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::linalg::rational_solve;
use super::tower::FieldTower;
use super::{rational_to_string, ExactError, Rational};

/// An element of ℚ(√d₁,…,√dₖ): 2ᵏ rational coordinates over the canonical
/// basis. Values are immutable; arithmetic returns fresh elements.
#[derive(Clone, Debug)]
pub struct FieldElem {
    tower: Arc<FieldTower>,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coords == other.coords
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        FieldElem { tower: Arc::clone(tower), coords: vec![Rational::zero(); tower.dim()] }
    }

    pub fn one(tower: &Arc<FieldTower>) -> Self {
        Self::from_rational(tower, Rational::one())
    }

    pub fn from_rational(tower: &Arc<FieldTower>, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); tower.dim()];
        coords[0] = r;
        FieldElem { tower: Arc::clone(tower), coords }
    }

    pub fn from_integer(tower: &Arc<FieldTower>, n: i64) -> Self {
        Self::from_rational(tower, Rational::from_integer(n.into()))
    }

    /// The basis element √(∏_{i∈s} dᵢ) for basis index `s`.
    pub fn basis(tower: &Arc<FieldTower>, s: usize) -> Self {
        assert!(s < tower.dim(), "basis index out of range");
        let mut coords = vec![Rational::zero(); tower.dim()];
        coords[s] = Rational::one();
        FieldElem { tower: Arc::clone(tower), coords }
    }

    /// Build directly from coordinates (length must be 2ᵏ).
    pub fn from_coords(tower: &Arc<FieldTower>, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), tower.dim(), "coordinate length must match tower dimension");
        FieldElem { tower: Arc::clone(tower), coords }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rational::is_zero)
    }

    /// True when the element lies in ℚ (all non-rational coordinates zero).
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rational::is_zero)
    }

    /// Rational part, valid whenever `is_rational` holds.
    pub fn rational_part(&self) -> &Rational {
        &self.coords[0]
    }

    /// Re-express the element in a larger tower containing every generator
    /// of its own tower.
    pub fn promote(&self, target: &Arc<FieldTower>) -> Result<FieldElem, ExactError> {
        if self.tower.as_ref() == target.as_ref() {
            return Ok(FieldElem { tower: Arc::clone(target), coords: self.coords.clone() });
        }
        if !self.tower.is_subtower_of(target) {
            return Err(ExactError::TowerMismatch);
        }
        // Map each source generator index to its index in the target.
        let map: Vec<usize> = self
            .tower
            .discriminants()
            .iter()
            .map(|d| target.discriminants().iter().position(|e| e == d).unwrap())
            .collect();
        let mut coords = vec![Rational::zero(); target.dim()];
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = 0usize;
            for (i, &m) in map.iter().enumerate() {
                if s & (1 << i) != 0 {
                    t |= 1 << m;
                }
            }
            coords[t] = c.clone();
        }
        Ok(FieldElem { tower: Arc::clone(target), coords })
    }

    fn aligned(&self, other: &FieldElem) -> Result<(FieldElem, FieldElem), ExactError> {
        if self.tower.as_ref() == other.tower.as_ref() {
            Ok((self.clone(), other.clone()))
        } else if self.tower.is_subtower_of(&other.tower) {
            Ok((self.promote(&other.tower)?, other.clone()))
        } else if other.tower.is_subtower_of(&self.tower) {
            Ok((self.clone(), other.promote(&self.tower)?))
        } else {
            Err(ExactError::TowerMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem, ExactError> {
        let (a, b) = self.aligned(other)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Ok(FieldElem { tower: a.tower, coords })
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem, ExactError> {
        let (a, b) = self.aligned(other)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        Ok(FieldElem { tower: a.tower, coords })
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            tower: Arc::clone(&self.tower),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> FieldElem {
        FieldElem {
            tower: Arc::clone(&self.tower),
            coords: self.coords.iter().map(|x| x * r).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem, ExactError> {
        let (a, b) = self.aligned(other)?;
        let dim = a.tower.dim();
        let mut coords = vec![Rational::zero(); dim];
        for (u, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (v, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (factor, w) = a.tower.basis_product(u, v);
                coords[w] += x * y * Rational::from_integer(factor.into());
            }
        }
        Ok(FieldElem { tower: a.tower, coords })
    }

    /// Matrix of multiplication by `self` in the canonical basis
    /// (column `u` holds the coordinates of `self`·basisᵤ).
    fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        let dim = self.tower.dim();
        let mut m = vec![vec![Rational::zero(); dim]; dim];
        for u in 0..dim {
            for (s, x) in self.coords.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (factor, w) = self.tower.basis_product(s, u);
                m[w][u] += x * Rational::from_integer(factor.into());
            }
        }
        m
    }

    /// Exact division, solving the 2ᵏ×2ᵏ rational linear system b·x = a.
    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (a, b) = self.aligned(other)?;
        if b.is_rational() {
            return Ok(a.scale(&b.coords[0].recip()));
        }
        let m = b.mul_matrix();
        let x = rational_solve(&m, &a.coords).expect("multiplication by a nonzero field element is invertible");
        Ok(FieldElem { tower: a.tower, coords: x })
    }

    pub fn inv(&self) -> Result<FieldElem, ExactError> {
        FieldElem::one(&self.tower).div(self)
    }

    /// Dispatch for the four-way arithmetic entry point.
    pub fn arith(op: ArithOp, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, ExactError> {
        match op {
            ArithOp::Add => a.add(b),
            ArithOp::Sub => a.sub(b),
            ArithOp::Mul => a.mul(b),
            ArithOp::Div => a.div(b),
        }
    }
}

/// Operation selector for [`FieldElem::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if s == 0 {
                write!(f, "{}", rational_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "sqrt{}", self.tower.basis_radicand(s))?;
            } else {
                write!(f, "{}*sqrt{}", rational_to_string(&abs), self.tower.basis_radicand(s))?;
            }
        }
        Ok(())
    }
}
