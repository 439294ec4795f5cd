//! Closed-form degree-bound arithmetic: the line-count bound, joint degree
//! products, subset sums, multiplier exponent constraints, and the
//! degree cap m+1 with the pair bound, each carrying its hypotheses.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::Rational;
use crate::infinity::line_count_bound;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Optional instance data checked against the bounds.
#[derive(Clone, Debug, Default)]
pub struct BoundsInput {
    /// Degrees of irreducible, pairwise relatively prime semi-invariants.
    /// Relative primality is asserted by the caller, not computed.
    pub degrees: Option<Vec<u64>>,
    /// Exponents of a claimed multiplier (Π φᵢ^{dᵢ})⁻¹.
    pub multiplier_exponents: Option<Vec<Rational>>,
    /// Whether the eigenvalue dichotomy was certified at every stationary
    /// point at infinity.
    pub property_e_certified: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub m: u64,
    pub n: usize,
    /// (mⁿ−1)/(m−1): invariant-line count and curve-count bound.
    pub line_count_bound: BigInt,
    /// Expected degree sum m+n−1 of multiplier factor degrees.
    pub multiplier_degree_sum: u64,
    /// Degree cap m+1 for irreducible homogeneous semi-invariants of the
    /// top part.
    pub degree_cap: u64,
    /// Π rᵢ ≤ bound for exactly n−1 supplied degrees.
    pub product_check: CheckStatus,
    pub product_value: Option<BigInt>,
    /// For k ≥ n supplied degrees: Π rᵢ · Σ_{|M|=k+1−n} 1/Π_{j∈M} rⱼ ≤ bound.
    pub subset_sum_check: CheckStatus,
    pub subset_sum_value: Option<Rational>,
    /// ℓ(ℓ−1)/2 ≤ bound and Σ_{i<j} rᵢrⱼ ≤ bound for the supplied count.
    pub pair_bound_check: CheckStatus,
    pub pair_sum_value: Option<BigInt>,
    /// All multiplier exponents equal to 1.
    pub exponent_check: CheckStatus,
    /// Σ rᵢ = m+n−1 when both degrees and exponents are supplied.
    pub multiplier_sum_check: CheckStatus,
    pub hypotheses: Vec<String>,
}

/// Evaluate every closed-form bound for (m, n) and check any supplied
/// instance data against it.
pub fn bounds_report(m: u64, n: usize, input: &BoundsInput) -> BoundsReport {
    assert!(m >= 2 && n >= 2, "bounds require m >= 2 and n >= 2");
    let bound = line_count_bound(m, n);
    let mut hypotheses = Vec::new();
    match input.property_e_certified {
        Some(true) => hypotheses.push("eigenvalue dichotomy at infinity: certified".to_string()),
        Some(false) => hypotheses.push("eigenvalue dichotomy at infinity: violated".to_string()),
        None => hypotheses.push("eigenvalue dichotomy at infinity: assumed, not certified".to_string()),
    }
    if n == 3 {
        hypotheses.push("invariant-line property of top-degree invariant varieties: automatic for n = 3".to_string());
    } else {
        hypotheses.push("invariant-line property of top-degree invariant varieties: assumed".to_string());
    }
    hypotheses.push("irreducibility and pairwise relative primality of supplied factors: asserted by caller, not computed".to_string());

    let mut product_check = CheckStatus::NotApplicable;
    let mut product_value = None;
    let mut subset_sum_check = CheckStatus::NotApplicable;
    let mut subset_sum_value = None;
    let mut pair_bound_check = CheckStatus::NotApplicable;
    let mut pair_sum_value = None;
    if let Some(degrees) = &input.degrees {
        let k = degrees.len();
        if k == n - 1 {
            let prod: BigInt = degrees.iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
            product_check = if prod <= bound { CheckStatus::Pass } else { CheckStatus::Fail };
            product_value = Some(prod);
        } else if k >= n {
            // Π rᵢ · Σ_{|M| = k+1−n} 1 / Π_{j∈M} rⱼ
            let prod: BigInt = degrees.iter().fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
            let mut sum = Rational::zero();
            let subset_size = k + 1 - n;
            let mut chosen = vec![0usize; subset_size];
            fn rec(
                degrees: &[u64],
                chosen: &mut Vec<usize>,
                pos: usize,
                start: usize,
                sum: &mut Rational,
            ) {
                if pos == chosen.len() {
                    let mut denom = BigInt::one();
                    for &i in chosen.iter() {
                        denom *= BigInt::from(degrees[i]);
                    }
                    *sum += Rational::new(BigInt::one(), denom);
                    return;
                }
                for i in start..degrees.len() {
                    chosen[pos] = i;
                    rec(degrees, chosen, pos + 1, i + 1, sum);
                }
            }
            if subset_size == 0 {
                sum = Rational::one();
            } else {
                rec(degrees, &mut chosen, 0, 0, &mut sum);
            }
            let value = Rational::from_integer(prod) * sum;
            subset_sum_check = if value <= Rational::from_integer(bound.clone()) {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            subset_sum_value = Some(value);
        }
        // pair bound on the supplied collection
        let l = BigInt::from(k as u64);
        let pair_count = &l * (&l - BigInt::one()) / BigInt::from(2);
        let mut pair_sum = BigInt::zero();
        for i in 0..k {
            for j in i + 1..k {
                pair_sum += BigInt::from(degrees[i]) * BigInt::from(degrees[j]);
            }
        }
        pair_bound_check = if pair_count <= bound && pair_sum <= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        pair_sum_value = Some(pair_sum);
    }

    let mut exponent_check = CheckStatus::NotApplicable;
    let mut multiplier_sum_check = CheckStatus::NotApplicable;
    if let Some(exps) = &input.multiplier_exponents {
        exponent_check = if exps.iter().all(|d| d.is_one()) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        if let Some(degrees) = &input.degrees {
            let sum: u64 = degrees.iter().sum();
            multiplier_sum_check = if sum == m + n as u64 - 1 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
        }
    }

    BoundsReport {
        m,
        n,
        line_count_bound: bound,
        multiplier_degree_sum: m + n as u64 - 1,
        degree_cap: m + 1,
        product_check,
        product_value,
        subset_sum_check,
        subset_sum_value,
        pair_bound_check,
        pair_sum_value,
        exponent_check,
        multiplier_sum_check,
        hypotheses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_three_dimensional_bounds() {
        let report = bounds_report(2, 3, &BoundsInput::default());
        assert_eq!(report.line_count_bound, BigInt::from(7));
        assert_eq!(report.multiplier_degree_sum, 4);
        assert_eq!(report.degree_cap, 3);
        assert_eq!(report.product_check, CheckStatus::NotApplicable);
    }

    #[test]
    fn degree_pair_product_passes() {
        let input = BoundsInput { degrees: Some(vec![1, 1]), ..Default::default() };
        let report = bounds_report(2, 3, &input);
        assert_eq!(report.product_check, CheckStatus::Pass);
        assert_eq!(report.product_value, Some(BigInt::one()));
    }

    #[test]
    fn product_bound_can_fail() {
        let input = BoundsInput { degrees: Some(vec![4, 2]), ..Default::default() };
        let report = bounds_report(2, 3, &input);
        assert_eq!(report.product_check, CheckStatus::Fail);
    }

    #[test]
    fn subset_sum_for_four_factors() {
        // k = 4 ≥ n = 3: Π = 16, subsets of size 2 of {2,2,2,2}: 6 × 1/4
        // value = 16 · 3/2 = 24 > 7 → Fail
        let input = BoundsInput { degrees: Some(vec![2, 2, 2, 2]), ..Default::default() };
        let report = bounds_report(2, 3, &input);
        assert_eq!(report.subset_sum_check, CheckStatus::Fail);
        assert_eq!(report.subset_sum_value, Some(Rational::from_integer(24.into())));
        // three lines in general position pass: Π=1·1·1, sum of single
        // inverses = 3 ⇒ 3 ≤ 7
        let input = BoundsInput { degrees: Some(vec![1, 1, 1]), ..Default::default() };
        let report = bounds_report(2, 3, &input);
        assert_eq!(report.subset_sum_check, CheckStatus::Pass);
        assert_eq!(report.subset_sum_value, Some(Rational::from_integer(3.into())));
    }

    #[test]
    fn multiplier_checks() {
        let one = Rational::from_integer(1.into());
        let input = BoundsInput {
            degrees: Some(vec![1, 1, 1, 1]),
            multiplier_exponents: Some(vec![one.clone(), one.clone(), one.clone(), one.clone()]),
            property_e_certified: Some(true),
        };
        let report = bounds_report(2, 3, &input);
        assert_eq!(report.exponent_check, CheckStatus::Pass);
        assert_eq!(report.multiplier_sum_check, CheckStatus::Pass); // 1+1+1+1 = 4 = m+n−1
        let input = BoundsInput {
            degrees: Some(vec![1, 1, 1]),
            multiplier_exponents: Some(vec![one.clone(), one.clone(), Rational::from_integer(2.into())]),
            property_e_certified: None,
        };
        let report = bounds_report(2, 3, &input);
        assert_eq!(report.exponent_check, CheckStatus::Fail);
        assert_eq!(report.multiplier_sum_check, CheckStatus::Fail); // 3 ≠ 4
    }
}
