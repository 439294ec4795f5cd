//! One dynamic quadratic extension on top of a tower: elements u + v·√A
//! with A a certified non-square of the base field.

use std::fmt;
use std::sync::Arc;

use super::elem::FieldElem;
use super::sqrt::{approx_f64, decimal_string, sqrt_in_field, SqrtOutcome};
use super::tower::FieldTower;
use super::{ExactError, Rational};

/// Quadratic extension Base(√A). Creation certifies that A is not a square
/// of the base: exactly over ℚ, heuristically (at the recorded precision)
/// over larger towers. A wrong `NotSquare` certificate can never produce a
/// wrong `Square` answer elsewhere; it only makes this extension formal.
#[derive(Clone, Debug)]
pub struct QuadExt {
    base: Arc<FieldTower>,
    radicand: FieldElem,
    certificate_bits: u32,
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.radicand == other.radicand
    }
}

impl QuadExt {
    pub fn new(radicand: FieldElem, precision_bits: u32) -> Result<Arc<QuadExt>, ExactError> {
        if radicand.is_zero() {
            return Err(ExactError::ZeroRadicand);
        }
        match sqrt_in_field(&radicand, precision_bits)? {
            SqrtOutcome::Square(_) => Err(ExactError::RadicandIsSquare),
            SqrtOutcome::NotSquare { precision_bits } => Ok(Arc::new(QuadExt {
                base: Arc::clone(radicand.tower()),
                radicand,
                certificate_bits: precision_bits,
            })),
        }
    }

    pub fn base(&self) -> &Arc<FieldTower> {
        &self.base
    }

    pub fn radicand(&self) -> &FieldElem {
        &self.radicand
    }

    /// Precision at which non-squareness was certified.
    pub fn certificate_bits(&self) -> u32 {
        self.certificate_bits
    }
}

/// Element u + v·√A of a quadratic extension.
#[derive(Clone, Debug)]
pub struct QuadElem {
    ext: Arc<QuadExt>,
    u: FieldElem,
    v: FieldElem,
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.ext.as_ref() == other.ext.as_ref() && self.u == other.u && self.v == other.v
    }
}

impl QuadElem {
    pub fn new(ext: &Arc<QuadExt>, u: FieldElem, v: FieldElem) -> Self {
        QuadElem { ext: Arc::clone(ext), u, v }
    }

    pub fn from_base(ext: &Arc<QuadExt>, u: FieldElem) -> Self {
        let v = FieldElem::zero(ext.base());
        QuadElem { ext: Arc::clone(ext), u, v }
    }

    pub fn ext(&self) -> &Arc<QuadExt> {
        &self.ext
    }

    pub fn u(&self) -> &FieldElem {
        &self.u
    }

    pub fn v(&self) -> &FieldElem {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { ext: Arc::clone(&self.ext), u: self.u.clone(), v: self.v.neg() }
    }

    pub fn add(&self, other: &QuadElem) -> Result<QuadElem, ExactError> {
        self.check(other)?;
        Ok(QuadElem {
            ext: Arc::clone(&self.ext),
            u: self.u.add(&other.u)?,
            v: self.v.add(&other.v)?,
        })
    }

    pub fn sub(&self, other: &QuadElem) -> Result<QuadElem, ExactError> {
        self.check(other)?;
        Ok(QuadElem {
            ext: Arc::clone(&self.ext),
            u: self.u.sub(&other.u)?,
            v: self.v.sub(&other.v)?,
        })
    }

    pub fn sub_base(&self, other: &FieldElem) -> Result<QuadElem, ExactError> {
        Ok(QuadElem { ext: Arc::clone(&self.ext), u: self.u.sub(other)?, v: self.v.clone() })
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem { ext: Arc::clone(&self.ext), u: self.u.neg(), v: self.v.neg() }
    }

    pub fn mul(&self, other: &QuadElem) -> Result<QuadElem, ExactError> {
        self.check(other)?;
        let a = self.ext.radicand();
        let u = self.u.mul(&other.u)?.add(&self.v.mul(&other.v)?.mul(a)?)?;
        let v = self.u.mul(&other.v)?.add(&self.v.mul(&other.u)?)?;
        Ok(QuadElem { ext: Arc::clone(&self.ext), u, v })
    }

    /// Norm u² − A·v², an element of the base field; nonzero for nonzero
    /// elements as long as A is genuinely not a square.
    pub fn norm(&self) -> Result<FieldElem, ExactError> {
        let a = self.ext.radicand();
        self.u.mul(&self.u)?.sub(&self.v.mul(&self.v)?.mul(a)?)
    }

    pub fn div(&self, other: &QuadElem) -> Result<QuadElem, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = other.norm()?;
        let prod = self.mul(&other.conj())?;
        Ok(QuadElem {
            ext: Arc::clone(&self.ext),
            u: prod.u.div(&n)?,
            v: prod.v.div(&n)?,
        })
    }

    fn check(&self, other: &QuadElem) -> Result<(), ExactError> {
        if self.ext.as_ref() == other.ext.as_ref() {
            Ok(())
        } else {
            Err(ExactError::TowerMismatch)
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        write!(f, "({}) + ({})*sqrt({})", self.u, self.v, self.ext.radicand())
    }
}

/// Exact eigenvalue: either a tower element or an element of a single
/// quadratic extension of the tower.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Base(FieldElem),
    Quad(QuadElem),
}

impl Eigenvalue {
    pub fn is_zero(&self) -> bool {
        match self {
            Eigenvalue::Base(x) => x.is_zero(),
            Eigenvalue::Quad(x) => x.is_zero(),
        }
    }

    /// Subtract a base-field element.
    pub fn sub_base(&self, other: &FieldElem) -> Result<Eigenvalue, ExactError> {
        Ok(match self {
            Eigenvalue::Base(x) => Eigenvalue::Base(x.sub(other)?),
            Eigenvalue::Quad(x) => Eigenvalue::Quad(x.sub_base(other)?),
        })
    }

    /// Rational coordinate vector for ℚ-linear-independence tests. Base
    /// elements occupy the first 2ᵏ slots; the √A-part occupies 2ᵏ more.
    /// Valid because √A lies outside the base field per the recorded
    /// certificate.
    pub fn coordinates(&self, base_dim: usize, has_quad: bool) -> Vec<Rational> {
        use num_traits::Zero;
        let total = if has_quad { 2 * base_dim } else { base_dim };
        let mut out = vec![Rational::zero(); total];
        match self {
            Eigenvalue::Base(x) => {
                out[..base_dim].clone_from_slice(x.coords());
            }
            Eigenvalue::Quad(x) => {
                out[..base_dim].clone_from_slice(x.u().coords());
                out[base_dim..].clone_from_slice(x.v().coords());
            }
        }
        out
    }

    /// Decimal rendering at the standard real embedding.
    pub fn decimal(&self, sig_digits: usize) -> String {
        match self {
            Eigenvalue::Base(x) => decimal_string(x, sig_digits),
            Eigenvalue::Quad(x) => {
                let a = approx_f64(x.ext().radicand());
                if a >= 0.0 {
                    let root = decimal_of_quad(x, sig_digits);
                    return root;
                }
                format!("({}) + ({})*sqrt(A)", decimal_string(x.u(), sig_digits), decimal_string(x.v(), sig_digits))
            }
        }
    }
}

fn decimal_of_quad(x: &QuadElem, sig_digits: usize) -> String {
    use super::sqrt::{fixed_to_decimal, real_embedding};
    let prec = (sig_digits as u32) * 4 + 64;
    let a = real_embedding(x.ext().radicand(), prec);
    let root = (a.max(num_bigint::BigInt::from(0)) << prec).sqrt();
    let u = real_embedding(x.u(), prec);
    let v = real_embedding(x.v(), prec);
    let val = u + ((v * root) >> prec);
    fixed_to_decimal(&val, prec, sig_digits)
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Base(x) => write!(f, "{x}"),
            Eigenvalue::Quad(x) => write!(f, "{x}"),
        }
    }
}
