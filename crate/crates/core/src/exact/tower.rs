//! Multiquadratic field towers ℚ(√d₁,…,√dₖ) with the canonical
//! subset-product basis.

use std::fmt;
use std::sync::Arc;

use super::ExactError;

/// Hard cap on the number of generators; keeps the division solves at most
/// 16×16.
pub const MAX_TOWER_GENERATORS: usize = 4;

/// A multiquadratic extension of ℚ described by its generator discriminants.
///
/// The canonical basis consists of the 2ᵏ products of subsets of
/// {√d₁,…,√dₖ}, indexed in binary-counter order: basis index `s` contains
/// √dᵢ exactly when bit `i` of `s` is set.
#[derive(Debug)]
pub struct FieldTower {
    discriminants: Vec<i64>,
    /// `basis_radicand[s]` = ∏_{i∈s} dᵢ, so the basis element is its square
    /// root.
    basis_radicand: Vec<i64>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.discriminants == other.discriminants
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    /// The rational field ℚ (empty tower).
    pub fn rationals() -> Arc<FieldTower> {
        create_tower(&[]).expect("empty tower is always valid")
    }

    pub fn discriminants(&self) -> &[i64] {
        &self.discriminants
    }

    /// Number of generators k.
    pub fn generators(&self) -> usize {
        self.discriminants.len()
    }

    /// Basis size 2ᵏ.
    pub fn dim(&self) -> usize {
        1 << self.discriminants.len()
    }

    /// Radicand of basis element `s` (the square of the basis element).
    pub fn basis_radicand(&self, s: usize) -> i64 {
        self.basis_radicand[s]
    }

    pub fn is_rationals(&self) -> bool {
        self.discriminants.is_empty()
    }

    /// Index of the product of two basis elements together with the integer
    /// factor pulled out: √u·√v = (∏_{i∈u∩v} dᵢ)·√w with w = u XOR v.
    pub fn basis_product(&self, u: usize, v: usize) -> (i64, usize) {
        let mut factor = 1i64;
        let common = u & v;
        for (i, &d) in self.discriminants.iter().enumerate() {
            if common & (1 << i) != 0 {
                factor *= d;
            }
        }
        (factor, u ^ v)
    }

    /// True when every generator of `self` occurs in `other`.
    pub fn is_subtower_of(&self, other: &FieldTower) -> bool {
        self.discriminants.iter().all(|d| other.discriminants.contains(d))
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.discriminants.is_empty() {
            write!(f, "Q")
        } else {
            let gens: Vec<String> =
                self.discriminants.iter().map(|d| format!("sqrt{d}")).collect();
            write!(f, "Q({})", gens.join(","))
        }
    }
}

/// Square-free part of a positive integer.
fn squarefree_part(mut d: i64) -> i64 {
    let mut part = 1i64;
    let mut p = 2i64;
    while p * p <= d {
        if d % p == 0 {
            let mut e = 0u32;
            while d % p == 0 {
                d /= p;
                e += 1;
            }
            if e % 2 == 1 {
                part *= p;
            }
        }
        p += 1;
    }
    part * d
}

fn is_perfect_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    for c in r.saturating_sub(2)..=r + 2 {
        if c >= 0 && c * c == n {
            return true;
        }
    }
    false
}

/// True when √d already lies in ℚ(√d₁,…) for the given generator list,
/// i.e. d times some subset product of the generators is a perfect square.
fn sqrt_in_span(d: i64, generators: &[i64]) -> bool {
    let k = generators.len();
    for s in 0..(1usize << k) {
        let mut prod = d as i128;
        for (i, &g) in generators.iter().enumerate() {
            if s & (1 << i) != 0 {
                prod *= g as i128;
            }
        }
        if is_perfect_square(prod) {
            return true;
        }
    }
    false
}

/// Create the tower ℚ(√d₁,…,√dₖ). An empty list yields ℚ.
///
/// Each entry must be a positive square-free integer ≥ 2 whose square root
/// does not already lie in the partial tower built from the preceding
/// entries.
pub fn create_tower(discriminants: &[i64]) -> Result<Arc<FieldTower>, ExactError> {
    if discriminants.len() > MAX_TOWER_GENERATORS {
        return Err(ExactError::TowerTooLarge(discriminants.len()));
    }
    let mut accepted: Vec<i64> = Vec::new();
    for &d in discriminants {
        if d <= 0 {
            return Err(ExactError::NotSquareFree(d));
        }
        if d == 1 {
            return Err(ExactError::RedundantGenerator(d));
        }
        let sf = squarefree_part(d);
        if sqrt_in_span(sf, &accepted) {
            // Covers entries like 8 after 2 (sqrt 8 = 2 sqrt 2) and perfect
            // squares.
            return Err(ExactError::RedundantGenerator(d));
        }
        if sf != d {
            return Err(ExactError::NotSquareFree(d));
        }
        accepted.push(d);
    }
    let k = accepted.len();
    let mut basis_radicand = Vec::with_capacity(1 << k);
    for s in 0..(1usize << k) {
        let mut prod = 1i64;
        for (i, &g) in accepted.iter().enumerate() {
            if s & (1 << i) != 0 {
                prod *= g;
            }
        }
        basis_radicand.push(prod);
    }
    Ok(Arc::new(FieldTower { discriminants: accepted, basis_radicand }))
}
