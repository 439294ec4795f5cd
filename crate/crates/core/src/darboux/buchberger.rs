//! Small Buchberger engine under graded reverse lex, with degree and
//! basis-size caps. Used by the bounded semi-invariant search.

use crate::poly::{MPoly, Mono};

/// Caps for the bounded elimination.
#[derive(Clone, Copy, Debug)]
pub struct EliminationBudget {
    pub degree_cap: u64,
    pub basis_cap: usize,
}

impl EliminationBudget {
    pub fn new(degree_cap: u64, basis_cap: usize) -> Self {
        EliminationBudget { degree_cap, basis_cap }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerResult {
    pub basis: Vec<MPoly>,
    pub budget_exceeded: bool,
}

fn make_monic(p: &MPoly) -> MPoly {
    match p.leading_term() {
        None => p.clone(),
        Some((_, c)) => {
            let inv = c.inv().expect("nonzero leading coefficient");
            p.mul_elem(&inv)
        }
    }
}

/// Full normal form of `p` modulo `basis`.
pub fn reduce(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rem = MPoly::zero(p.nvars(), p.tower());
    let mut work = p.clone();
    'outer: while let Some((lm, lc)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for b in basis {
            if let Some((bm, bc)) = b.leading_term() {
                if bm.divides(&lm) {
                    let qm = lm.div(bm);
                    let qc = lc.div(bc).expect("nonzero leading coefficient");
                    let factor = MPoly::constant(work.nvars(), qc).mul_mono(&qm);
                    work = work.sub(&factor.mul(b));
                    continue 'outer;
                }
            }
        }
        // leading term irreducible: move it to the remainder
        let tower = work.tower().clone();
        let term = MPoly::from_terms(work.nvars(), &tower, [(lm.0.clone(), lc.clone())]);
        rem = rem.add(&term);
        work = work.sub(&term);
    }
    rem
}

fn lcm_mono(a: &Mono, b: &Mono) -> Mono {
    Mono(a.0.iter().zip(&b.0).map(|(x, y)| *x.max(y)).collect())
}

fn s_poly(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = lcm_mono(fm, gm);
    let uf = l.div(fm);
    let ug = l.div(gm);
    let a = f.mul_mono(&uf).mul_elem(&fc.inv().expect("nonzero"));
    let b = g.mul_mono(&ug).mul_elem(&gc.inv().expect("nonzero"));
    a.sub(&b)
}

/// Buchberger with the product criterion, degree cap, and basis cap.
/// When a cap is hit the offending S-polynomial is dropped and the result
/// is flagged; the returned basis is then only a partial one.
pub fn buchberger(generators: &[MPoly], budget: EliminationBudget) -> GroebnerResult {
    let mut basis: Vec<MPoly> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(make_monic)
        .collect();
    let mut budget_exceeded = false;
    if basis.is_empty() {
        return GroebnerResult { basis, budget_exceeded };
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, _) = fi.leading_term().unwrap();
        let (mj, _) = fj.leading_term().unwrap();
        // product criterion: coprime leading monomials reduce to zero
        if lcm_mono(mi, mj).total_degree() == mi.total_degree() + mj.total_degree() {
            continue;
        }
        let s = s_poly(fi, fj);
        let nf = reduce(&s, &basis);
        if nf.is_zero() {
            continue;
        }
        if nf.degree().unwrap_or(0) > budget.degree_cap || basis.len() >= budget.basis_cap {
            budget_exceeded = true;
            continue;
        }
        let nf = make_monic(&nf);
        let new_index = basis.len();
        for k in 0..new_index {
            pairs.push((k, new_index));
        }
        basis.push(nf);
    }
    basis.sort_by(|a, b| {
        let am = a.leading_term().unwrap().0;
        let bm = b.leading_term().unwrap().0;
        am.cmp(bm)
    });
    if budget_exceeded {
        // the set may not be a Gröbner basis; minimization would be unsound
        return GroebnerResult { basis, budget_exceeded };
    }
    // minimize: keep elements whose leading monomial no kept element
    // divides (ascending order puts divisors first)
    let mut minimal: Vec<MPoly> = Vec::new();
    for f in &basis {
        let lt = f.leading_term().unwrap().0.clone();
        if !minimal.iter().any(|g| g.leading_term().unwrap().0.divides(&lt)) {
            minimal.push(f.clone());
        }
    }
    // tail-reduce each element against the others
    let mut reduced: Vec<MPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, b)| b.clone())
            .collect();
        let nf = reduce(&minimal[i], &others);
        if !nf.is_zero() {
            reduced.push(make_monic(&nf));
        }
    }
    reduced.sort_by(|a, b| {
        let am = a.leading_term().unwrap().0;
        let bm = b.leading_term().unwrap().0;
        am.cmp(bm)
    });
    GroebnerResult { basis: reduced, budget_exceeded }
}

/// True when the ideal contains a nonzero constant.
pub fn is_inconsistent(basis: &[MPoly]) -> bool {
    basis.iter().any(|p| !p.is_zero() && p.is_constant())
}

/// The ideal is zero-dimensional when every variable has a pure power
/// among the leading monomials.
pub fn is_zero_dimensional(basis: &[MPoly], nvars: usize) -> bool {
    (0..nvars).all(|v| {
        basis.iter().any(|p| {
            let (m, _) = p.leading_term().unwrap();
            m.0[v] > 0 && m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0)
        })
    })
}

/// Monomials not divisible by any leading monomial of the basis
/// (the standard monomials); `None` when infinite or above the cap.
pub fn standard_monomials(basis: &[MPoly], nvars: usize, cap: usize) -> Option<Vec<Mono>> {
    if !is_zero_dimensional(basis, nvars) {
        return None;
    }
    let leads: Vec<Mono> = basis.iter().map(|p| p.leading_term().unwrap().0.clone()).collect();
    let mut out = Vec::new();
    let mut frontier = vec![Mono::one(nvars)];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(Mono::one(nvars));
    while let Some(m) = frontier.pop() {
        if leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        out.push(m.clone());
        if out.len() > cap {
            return None;
        }
        for v in 0..nvars {
            let mut e = m.0.clone();
            e[v] += 1;
            let next = Mono(e);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Some(out)
}
