//! Bounded semi-invariant search over ℚ.
//!
//! For each candidate leading monomial μ of ψ (degree 1..=d_max), the
//! unknowns are the coefficients of ψ below μ and the coefficients of the
//! cofactor λ (degree ≤ m−1); the coefficient equations of
//! X_f(ψ) − λψ = 0 form a bilinear system. Each branch is solved by
//! bounded graded-reverse-lex elimination followed by exact extraction of
//! the rational points; every candidate is re-verified before being
//! emitted. Positive-dimensional branches are specialized at
//! free-unknowns = 0, the canonical family representative.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{rational_kernel, FieldElem, Rational};
use crate::poly::{DivideOutcome, MPoly, Mono, PolyVectorField};

use super::buchberger::{
    buchberger, is_inconsistent, standard_monomials, EliminationBudget,
};
use super::{verify_semi_invariant, DarbouxError, SemiInvariant, SemiOutcome};

/// Search result; `budget_exceeded` flags partial output after an
/// elimination cap was hit.
#[derive(Clone, Debug)]
pub struct SearchOutput {
    pub found: Vec<SemiInvariant>,
    pub budget_exceeded: bool,
    /// Outputs are deduplicated up to scalars and divisibility by other
    /// outputs; irreducibility itself is not decided.
    pub irreducibility_note: &'static str,
}

/// All monomials of total degree ≤ cap in `nvars` variables.
fn monomials_up_to(nvars: usize, cap: u64) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Mono>, current: &mut Vec<u32>, var: usize, left: u64, nvars: usize) {
        if var == nvars {
            out.push(Mono(current.clone()));
            return;
        }
        for e in 0..=left {
            current[var] = e as u32;
            rec(out, current, var + 1, left - e, nvars);
        }
        current[var] = 0;
    }
    rec(&mut out, &mut current, 0, cap, nvars);
    out.sort();
    out
}

/// Bounded factorization by trial division; `complete` is false when a
/// composite cofactor above the bound remains.
fn factor_bounded(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.abs();
    let mut primes = Vec::new();
    if n.is_zero() {
        return (primes, true);
    }
    let bound = BigInt::from(1_000_000u64);
    let mut p = BigInt::from(2);
    while &p * &p <= n && p <= bound {
        while (&n % &p).is_zero() {
            primes.push(p.clone());
            n /= &p;
        }
        p += if p == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    if n > BigInt::one() {
        // either prime (no factor below min(sqrt, bound)) or an unfactored
        // composite above bound²
        let complete = &n <= &(&bound * &bound);
        primes.push(n);
        return (primes, complete);
    }
    (primes, true)
}

fn divisors_from_primes(primes: &[BigInt], cap: usize) -> Option<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for p in primes {
        let snapshot = divs.clone();
        let mut grown = divs;
        for d in snapshot {
            let nd = &d * p;
            if !grown.contains(&nd) {
                grown.push(nd);
            }
            if grown.len() > cap {
                return None;
            }
        }
        divs = grown;
    }
    Some(divs)
}

/// Distinct rational roots of a univariate rational polynomial; the flag
/// is false when divisor enumeration was incomplete.
fn rational_roots(coeffs: &[Rational]) -> (Vec<Rational>, bool) {
    // primitive integer coefficients
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> =
        coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    while ints.last().map(|c| c.is_zero()).unwrap_or(false) {
        ints.pop();
    }
    if ints.len() <= 1 {
        return (Vec::new(), true);
    }
    let mut roots = Vec::new();
    // strip zero roots
    let mut low = 0usize;
    while ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rational::zero());
        ints.drain(..low);
    }
    if ints.len() <= 1 {
        return (roots, true);
    }
    let (p0, c0) = factor_bounded(&ints[0]);
    let (pd, cd) = factor_bounded(ints.last().unwrap());
    let mut complete = c0 && cd;
    let (num_divs, den_divs) = match (divisors_from_primes(&p0, 4096), divisors_from_primes(&pd, 4096)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return (roots, false);
        }
    };
    let eval = |r: &Rational, cs: &[BigInt]| -> bool {
        let mut acc = Rational::zero();
        for c in cs.iter().rev() {
            acc = acc * r + Rational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for num in &num_divs {
        for den in &den_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(num * BigInt::from(sign), den.clone());
                if !roots.contains(&cand) && eval(&cand, &ints) {
                    roots.push(cand);
                }
            }
        }
    }
    if num_divs.len() >= 4096 || den_divs.len() >= 4096 {
        complete = false;
    }
    (roots, complete)
}

/// Substitute a polynomial value for one unknown across a system.
fn substitute_poly(p: &MPoly, var: usize, value: &MPoly) -> MPoly {
    let nvars = p.nvars();
    let tower = p.tower();
    let images: Vec<MPoly> = (0..nvars)
        .map(|i| if i == var { value.clone() } else { MPoly::var(nvars, i, tower) })
        .collect();
    p.compose(&images)
}

struct SystemSolver {
    nvars: usize,
    budget: EliminationBudget,
    budget_hit: bool,
    solutions: Vec<Vec<Rational>>,
}

impl SystemSolver {
    /// Recursive exact solving: bounded elimination, then a linear
    /// substitution rule, a free-variable rule, and a minimal-polynomial
    /// rule with rational root extraction.
    fn solve(&mut self, system: Vec<MPoly>, stack: Vec<(usize, MPoly)>, depth: usize) {
        if depth > self.nvars + 2 {
            self.budget_hit = true;
            return;
        }
        let tower = crate::exact::FieldTower::rationals();
        let active: Vec<MPoly> = system.into_iter().filter(|p| !p.is_zero()).collect();
        let result = buchberger(&active, self.budget);
        if result.budget_exceeded {
            self.budget_hit = true;
        }
        let basis = result.basis;
        if is_inconsistent(&basis) {
            return;
        }
        if basis.is_empty() {
            self.emit(&stack);
            return;
        }
        // variables still unresolved at this level
        let resolved: Vec<usize> = stack.iter().map(|(v, _)| *v).collect();
        let occurs = |v: usize| basis.iter().any(|p| p.degree_in(v).unwrap_or(0) > 0);
        // linear rule: α·v + rest with constant α and v-free rest
        for p in &basis {
            for v in 0..self.nvars {
                if resolved.contains(&v) || p.degree_in(v) != Some(1) {
                    continue;
                }
                let alpha_poly = p.coeff_of_power(v, 1);
                if !alpha_poly.is_constant() {
                    continue;
                }
                let alpha = alpha_poly.constant_coeff().cloned();
                let Some(alpha) = alpha else { continue };
                let rest = p.coeff_of_power(v, 0);
                let value = rest.mul_elem(&alpha.inv().expect("nonzero")).neg();
                let next: Vec<MPoly> = basis
                    .iter()
                    .filter(|q| !std::ptr::eq(*q, p))
                    .map(|q| substitute_poly(q, v, &value))
                    .collect();
                let mut stack = stack;
                stack.push((v, value));
                self.solve(next, stack, depth + 1);
                return;
            }
        }
        // free rule: canonical section at 0
        for v in 0..self.nvars {
            if !resolved.contains(&v) && !occurs(v) {
                let zero = MPoly::zero(self.nvars, &tower);
                let mut stack = stack;
                stack.push((v, zero));
                self.solve(basis, stack, depth + 1);
                return;
            }
        }
        // minimal-polynomial rule over the standard monomials
        let Some(std_monos) = standard_monomials(&basis, self.nvars, 128) else {
            self.budget_hit = true;
            return;
        };
        let target = (0..self.nvars).find(|v| !resolved.contains(v) && occurs(*v));
        let Some(v) = target else {
            // every variable resolved or absent; basis nonempty but no
            // variables left means no solution
            return;
        };
        let index: BTreeMap<&Mono, usize> =
            std_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = std_monos.len();
        let mut powers: Vec<Vec<Rational>> = Vec::new();
        let mut power_poly = MPoly::one(self.nvars, &tower);
        let min_poly = loop {
            let nf = super::buchberger::reduce(&power_poly, &basis);
            let mut vec = vec![Rational::zero(); dim];
            for (m, c) in nf.terms() {
                let Some(&i) = index.get(m) else {
                    self.budget_hit = true;
                    return;
                };
                vec[i] = c.rational_part().clone();
            }
            powers.push(vec);
            // columns: powers so far; look for a kernel vector
            let rows: Vec<Vec<Rational>> = (0..dim)
                .map(|r| powers.iter().map(|p| p[r].clone()).collect())
                .collect();
            let kernel = rational_kernel(&rows);
            if let Some(dep) = kernel.first() {
                break dep.clone();
            }
            if powers.len() > dim + 1 {
                self.budget_hit = true;
                return;
            }
            power_poly = power_poly.mul(&MPoly::var(self.nvars, v, &tower));
        };
        let (roots, complete) = rational_roots(&min_poly);
        if !complete {
            self.budget_hit = true;
        }
        for r in roots {
            let value = MPoly::constant(self.nvars, FieldElem::from_rational(&tower, r));
            let next: Vec<MPoly> =
                basis.iter().map(|q| substitute_poly(q, v, &value)).collect();
            let mut stack = stack.clone();
            stack.push((v, value));
            self.solve(next, stack, depth + 1);
        }
    }

    /// Evaluate the resolution stack into a concrete assignment; variables
    /// never touched default to zero.
    fn emit(&mut self, stack: &[(usize, MPoly)]) {
        let tower = crate::exact::FieldTower::rationals();
        let mut assignment = vec![FieldElem::zero(&tower); self.nvars];
        for (v, value) in stack.iter().rev() {
            assignment[*v] = value.eval(&assignment);
        }
        let rational: Vec<Rational> =
            assignment.iter().map(|e| e.rational_part().clone()).collect();
        if !self.solutions.contains(&rational) {
            self.solutions.push(rational);
        }
    }
}

/// Search all semi-invariants of degree ≤ d_max over ℚ. The elimination
/// budget is the total-degree cap for the Buchberger runs; pass `None`
/// for the default 2·(d_max + m).
pub fn search_semi_invariants(
    f: &PolyVectorField,
    d_max: u64,
    budget: Option<u64>,
) -> Result<SearchOutput, DarbouxError> {
    if !f.tower().is_rationals() {
        return Err(DarbouxError::SearchRequiresRationalField);
    }
    assert!(d_max >= 1, "d_max must be at least 1");
    let n = f.dim();
    let m = f.degree();
    let tower = f.tower().clone();
    let degree_cap = budget.unwrap_or(2 * (d_max + m));
    let elim_budget = EliminationBudget::new(degree_cap, 200);
    let psi_monos = monomials_up_to(n, d_max);
    let lambda_monos: Vec<Mono> = if m == 0 {
        Vec::new()
    } else {
        monomials_up_to(n, m - 1)
    };
    let mut budget_exceeded = false;
    let mut found: Vec<SemiInvariant> = Vec::new();
    let mut seen: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();

    // branches: candidate leading monomials, largest first
    for lead_idx in (0..psi_monos.len()).rev() {
        let mu = &psi_monos[lead_idx];
        if mu.total_degree() == 0 {
            continue;
        }
        // unknowns: coefficients below μ, then the cofactor coefficients
        let below: Vec<&Mono> = psi_monos[..lead_idx].iter().collect();
        let nunk = below.len() + lambda_monos.len();
        let l_off = below.len();
        // coefficient slots of X_f(ψ) − λψ as polynomials in the unknowns
        let mut slots: BTreeMap<Mono, MPoly> = BTreeMap::new();
        let add = |mono: Mono, poly: MPoly, slots: &mut BTreeMap<Mono, MPoly>| {
            match slots.remove(&mono) {
                Some(prev) => {
                    slots.insert(mono, prev.add(&poly));
                }
                None => {
                    slots.insert(mono, poly);
                }
            }
        };
        let unk = |i: usize| MPoly::var(nunk, i, &tower);
        // X_f contribution of a ψ monomial, multiplied by an unknown poly
        let lie_of = |mono: &Mono, factor: &MPoly, slots: &mut BTreeMap<Mono, MPoly>| {
            let mpoly = MPoly::from_terms(n, &tower, [(mono.0.clone(), FieldElem::one(&tower))]);
            for i in 0..n {
                let d = mpoly.partial_derivative(i);
                let prod = f.component(i).mul(&d);
                for (xm, c) in prod.terms() {
                    add(xm.clone(), factor.mul_scalar(c.rational_part()), slots);
                }
            }
        };
        // leading monomial has coefficient 1
        let one_poly = MPoly::one(nunk, &tower);
        lie_of(mu, &one_poly, &mut slots);
        for (ci, nu) in below.iter().enumerate() {
            lie_of(nu, &unk(ci), &mut slots);
        }
        // − λψ
        for (li, tau) in lambda_monos.iter().enumerate() {
            let l = unk(l_off + li);
            // τ·μ with coefficient −l
            add(tau.mul(mu), l.neg(), &mut slots);
            for (ci, nu) in below.iter().enumerate() {
                add(tau.mul(nu), l.mul(&unk(ci)).neg(), &mut slots);
            }
        }
        let system: Vec<MPoly> =
            slots.into_values().filter(|p| !p.is_zero()).collect();
        let mut solver = SystemSolver {
            nvars: nunk,
            budget: elim_budget,
            budget_hit: false,
            solutions: Vec::new(),
        };
        solver.solve(system, Vec::new(), 0);
        budget_exceeded |= solver.budget_hit;
        for sol in solver.solutions {
            let mut psi = MPoly::from_terms(n, &tower, [(mu.0.clone(), FieldElem::one(&tower))]);
            for (ci, nu) in below.iter().enumerate() {
                if !sol[ci].is_zero() {
                    psi = psi.add(&MPoly::from_terms(
                        n,
                        &tower,
                        [(nu.0.clone(), FieldElem::from_rational(&tower, sol[ci].clone()))],
                    ));
                }
            }
            if psi.is_constant() {
                continue;
            }
            // mandatory re-verification gate
            if let Ok(SemiOutcome::Verified(si)) = verify_semi_invariant(f, &psi) {
                let key = format!("{}", si.psi);
                if seen.insert(key) {
                    found.push(si);
                }
            }
        }
    }
    // order by (degree, canonical print), then drop products of other
    // outputs (the quotient is itself a semi-invariant, so nothing is lost)
    found.sort_by(|a, b| {
        (a.degree, format!("{}", a.psi)).cmp(&(b.degree, format!("{}", b.psi)))
    });
    let mut kept: Vec<SemiInvariant> = Vec::new();
    for si in found {
        let divisible = kept.iter().any(|k| {
            k.degree < si.degree
                && matches!(si.psi.exact_divide(&k.psi), Ok(DivideOutcome::Quotient(_)))
        });
        if !divisible {
            kept.push(si);
        }
    }
    Ok(SearchOutput {
        found: kept,
        budget_exceeded,
        irreducibility_note: "irreducibility not certified",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn q_t() -> std::sync::Arc<crate::exact::FieldTower> {
        crate::exact::create_tower(&[]).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        let monos = monomials_up_to(3, 1);
        assert_eq!(monos.len(), 4);
        let monos = monomials_up_to(3, 2);
        assert_eq!(monos.len(), 10);
    }

    #[test]
    fn rational_roots_of_small_polys() {
        // (x - 2)(x + 3/2)(x) = x^3 - x^2/2 - 3x
        let coeffs = vec![q(0), q(-3), Rational::new((-1).into(), 2.into()), q(1)];
        let (roots, complete) = rational_roots(&coeffs);
        assert!(complete);
        assert!(roots.contains(&q(0)));
        assert!(roots.contains(&q(2)));
        assert!(roots.contains(&Rational::new((-3).into(), 2.into())));
        // x^2 + 1: no rational roots
        let (roots, complete) = rational_roots(&[q(1), q(0), q(1)]);
        assert!(complete && roots.is_empty());
    }

    #[test]
    fn diagonal_field_degree_one() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x1.clone(), x2.mul_scalar(&q(2))]).unwrap();
        let out = search_semi_invariants(&f, 1, None).unwrap();
        assert!(!out.budget_exceeded);
        let names: Vec<String> = out.found.iter().map(|s| format!("{}", s.psi)).collect();
        assert_eq!(names, vec!["x1", "x2"]);
    }

    #[test]
    fn diagonal_field_degree_two_products_excluded() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x1.clone(), x2.mul_scalar(&q(2))]).unwrap();
        let out = search_semi_invariants(&f, 2, None).unwrap();
        let names: Vec<String> = out.found.iter().map(|s| format!("{}", s.psi)).collect();
        assert_eq!(names, vec!["x1", "x2"], "products of outputs are dropped");
    }

    #[test]
    fn rotation_has_no_rational_lines() {
        let t = q_t();
        let x1 = MPoly::var(2, 0, &t);
        let x2 = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x2.clone(), x1.neg()]).unwrap();
        let out = search_semi_invariants(&f, 1, None).unwrap();
        assert!(out.found.is_empty(), "degree-1 system over Q has only the trivial solution");
    }

    #[test]
    fn tower_field_rejected() {
        let t = crate::exact::create_tower(&[2]).unwrap();
        let x1 = MPoly::var(1, 0, &t);
        let f = PolyVectorField::new(vec![x1.mul_elem(&FieldElem::basis(&t, 1))]).unwrap();
        assert_eq!(
            search_semi_invariants(&f, 1, None).unwrap_err(),
            DarbouxError::SearchRequiresRationalField
        );
    }
}
