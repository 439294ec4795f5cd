//! Square-root decision in a tower: exact over ℚ, numeric embeddings plus
//! rational reconstruction plus exact verification over extensions.
//!
//! The outcome is one-sided: `Square(r)` always comes with the exact
//! certificate r·r = a, while `NotSquare` only records the precision at
//! which reconstruction failed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::FieldElem;
use super::tower::FieldTower;
use super::{ExactError, Rational};

/// Default working precision for embeddings, in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Result of a square-root decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqrtOutcome {
    /// Exact root: `root * root == a` was verified.
    Square(FieldElem),
    /// No root found at the given working precision.
    NotSquare { precision_bits: u32 },
}

/// Fixed-point value x ≈ z / 2^prec.
fn fixed_from_rational(r: &Rational, prec: u32) -> BigInt {
    (r.numer() << prec).div_floor(r.denom())
}

fn fixed_mul(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    (a * b) >> prec
}

fn fixed_div(a: &BigInt, b: &BigInt, prec: u32) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    (a << prec).div_floor(b)
}

/// Integer square root of a non-negative fixed-point value.
fn fixed_sqrt(a: &BigInt, prec: u32) -> BigInt {
    if a.is_negative() {
        return BigInt::zero();
    }
    (a << prec).sqrt()
}

/// Numeric square roots of the basis radicands at the requested precision.
fn basis_roots(tower: &FieldTower, prec: u32) -> Vec<BigInt> {
    (0..tower.dim())
        .map(|s| fixed_sqrt(&(BigInt::from(tower.basis_radicand(s)) << prec), prec))
        .collect()
}

/// Real embedding of `a` determined by a sign pattern on the generators:
/// bit i of `signs` flips the sign of √dᵢ.
fn embed(a: &FieldElem, signs: usize, roots: &[BigInt], prec: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for (s, c) in a.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = fixed_mul(&fixed_from_rational(c, prec), &roots[s], prec);
        if (s & signs).count_ones() % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

/// Standard real embedding (all square roots taken positive).
pub fn real_embedding(a: &FieldElem, prec: u32) -> BigInt {
    let roots = basis_roots(a.tower(), prec);
    embed(a, 0, &roots, prec)
}

/// Continued-fraction reconstruction of a rational from a fixed-point value,
/// with numerator and denominator bounded by 2^bound_bits.
fn reconstruct_rational(x: &BigInt, prec: u32, bound_bits: u64) -> Option<Rational> {
    let bound = BigInt::one() << bound_bits;
    let denom = BigInt::one() << prec;
    let mut a = x.clone();
    let mut b = denom.clone();
    // Convergents of the continued fraction of x / 2^prec.
    let (mut p0, mut p1) = (BigInt::one(), x.div_floor(&denom));
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    let first = p1.clone();
    let rem = &a - &first * &b;
    a = b;
    b = rem;
    while !b.is_zero() {
        if q1.magnitude() > bound.magnitude() {
            break;
        }
        let q = a.div_floor(&b);
        let rem = &a - &q * &b;
        let p2 = &q * &p1 + &p0;
        let q2 = &q * &q1 + &q0;
        p0 = p1;
        p1 = p2;
        q0 = q1;
        q1 = q2;
        a = b;
        b = rem;
    }
    // Pick the best convergent within the bound.
    let (p, q) = if q1.magnitude() <= bound.magnitude() { (p1, q1) } else { (p0, q0) };
    if q.is_zero() {
        return None;
    }
    let cand = Rational::new(p, q);
    // Accept only when the candidate is close at the working precision.
    let err = (fixed_from_rational(&cand, prec) - x).magnitude().to_owned();
    let tol = num_bigint::BigUint::one() << (prec as u64).saturating_sub(bound_bits * 2 + 8);
    if err <= tol {
        Some(cand)
    } else {
        None
    }
}

/// Square-root decision for `a` in its own tower.
///
/// Over ℚ the decision is exact. Over a tower, all real embeddings are
/// computed at `precision_bits`, candidate coordinates are rationally
/// reconstructed, and `Square` is returned only when the candidate squares
/// back to `a` exactly.
pub fn sqrt_in_field(a: &FieldElem, precision_bits: u32) -> Result<SqrtOutcome, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroRadicand);
    }
    let tower = a.tower();
    if tower.is_rationals() {
        let r = a.rational_part();
        if r.is_negative() {
            return Ok(SqrtOutcome::NotSquare { precision_bits });
        }
        let np = r.numer().sqrt();
        let dp = r.denom().sqrt();
        if &(&np * &np) == r.numer() && &(&dp * &dp) == r.denom() {
            return Ok(SqrtOutcome::Square(FieldElem::from_rational(tower, Rational::new(np, dp))));
        }
        return Ok(SqrtOutcome::NotSquare { precision_bits });
    }

    let prec = precision_bits;
    let k = tower.generators();
    let dim = tower.dim();
    let roots = basis_roots(tower, prec);
    let margin = BigInt::one() << (prec / 2);

    // One numeric square root per embedding; a real square must be
    // non-negative in every embedding.
    let mut sqrt_values = Vec::with_capacity(dim);
    for signs in 0..(1usize << k) {
        let v = embed(a, signs, &roots, prec);
        if v < -margin.clone() {
            return Ok(SqrtOutcome::NotSquare { precision_bits });
        }
        sqrt_values.push(fixed_sqrt(&v.max(BigInt::zero()), prec));
    }

    let bound_bits = (prec / 4) as u64;
    // The root's embeddings are ±√σ(a); fix the all-plus embedding positive
    // and try every sign pattern for the rest.
    for eps in 0..(1usize << (dim - 1)) {
        let mut coords = Vec::with_capacity(dim);
        let mut ok = true;
        for s in 0..dim {
            // y_s = Σ_t sign_t(s) σ_t(r) / (2^k √(radicand_s))
            let mut acc = BigInt::zero();
            for (t, sv) in sqrt_values.iter().enumerate() {
                let mut term = sv.clone();
                if t > 0 && eps & (1 << (t - 1)) != 0 {
                    term = -term;
                }
                if (s & t).count_ones() % 2 == 1 {
                    term = -term;
                }
                acc += term;
            }
            let denom = &roots[s] * BigInt::from(dim as i64);
            let y = fixed_div(&acc, &denom, prec);
            match reconstruct_rational(&y, prec, bound_bits) {
                Some(r) => coords.push(r),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let candidate = FieldElem::from_coords(tower, coords);
        if candidate.mul(&candidate).expect("same tower") == *a {
            return Ok(SqrtOutcome::Square(candidate));
        }
    }
    Ok(SqrtOutcome::NotSquare { precision_bits })
}

/// Decimal rendering of a tower element at the standard real embedding,
/// with the requested number of significant digits.
pub fn decimal_string(a: &FieldElem, sig_digits: usize) -> String {
    let prec = (sig_digits as u32) * 4 + 64;
    let z = real_embedding(a, prec);
    fixed_to_decimal(&z, prec, sig_digits)
}

/// Format a fixed-point value z/2^prec with `sig` significant digits.
pub(crate) fn fixed_to_decimal(z: &BigInt, prec: u32, sig: usize) -> String {
    if z.is_zero() {
        return "0".to_string();
    }
    let neg = z.is_negative();
    let mag = z.magnitude().clone();
    // Decimal exponent e with value = 0.d1d2... × 10^e.
    let bits = mag.bits() as i64 - prec as i64;
    let mut exp10 = (bits as f64 * 0.30102999566398119).ceil() as i64;
    let ten = num_bigint::BigUint::from(10u32);
    let scale = |e: i64| -> num_bigint::BigUint {
        // mag * 10^(sig - e) / 2^prec
        let shift = sig as i64 - e;
        if shift >= 0 {
            (&mag * ten.pow(shift as u32)) >> (prec as u64)
        } else {
            (&mag >> (prec as u64 + 1)) / ten.pow((-shift) as u32)
        }
    };
    let mut digits = scale(exp10);
    let low = ten.pow(sig as u32 - 1);
    let high = ten.pow(sig as u32);
    while digits >= high {
        exp10 += 1;
        digits = scale(exp10);
    }
    while !digits.is_zero() && digits < low {
        exp10 -= 1;
        digits = scale(exp10);
    }
    let ds = digits.to_string();
    let sign = if neg { "-" } else { "" };
    // Plain notation for moderate exponents, scientific otherwise.
    if exp10 >= 1 && exp10 <= sig as i64 {
        let (int_part, frac_part) = ds.split_at(exp10 as usize);
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    } else if exp10 <= 0 && exp10 > -4 {
        let zeros = "0".repeat((-exp10) as usize);
        format!("{sign}0.{zeros}{}", ds.trim_end_matches('0'))
    } else {
        let frac = ds[1..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{}e{}", &ds[..1], exp10 - 1)
        } else {
            format!("{sign}{}.{}e{}", &ds[..1], frac, exp10 - 1)
        }
    }
}

/// f64 approximation of a tower element (for sorting and sanity checks in
/// reports; never used in exact decisions).
pub(crate) fn approx_f64(a: &FieldElem) -> f64 {
    let prec = 96u32;
    let z = real_embedding(a, prec);
    let num = z.to_f64().unwrap_or(f64::NAN);
    num / (2f64).powi(prec as i32)
}
