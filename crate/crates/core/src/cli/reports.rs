//! JSON report shapes. Every exact value is serialized as coordinate
//! strings over the tower basis; decimals (30 significant digits) are
//! advisory renderings, never the contract.

use serde::{Deserialize, Serialize};

use crate::darboux::{BoundsReport, CheckStatus, MultiplierOutcome, SearchOutput, SemiInvariant};
use crate::distinguished::{DistinguishedField, SampleStats, SeventhReport};
use crate::exact::{decimal_string, rational_to_string, Eigenvalue, FieldElem};
use crate::infinity::{Classification, InfinityPointReport, PropertyEReport, Verdict};
use crate::parse_io::{mpoly_to_json, vector_field_to_json, MPolyRepr, VectorFieldRepr};
use crate::poly::MPoly;
use crate::transform::PoincareChart;

pub const DECIMAL_DIGITS: usize = 30;

pub fn elem_coords(e: &FieldElem) -> Vec<String> {
    e.coords().iter().map(rational_to_string).collect()
}

fn vector_coords(v: &[FieldElem]) -> Vec<Vec<String>> {
    v.iter().map(elem_coords).collect()
}

fn vector_decimals(v: &[FieldElem]) -> Vec<String> {
    v.iter().map(|e| decimal_string(e, DECIMAL_DIGITS)).collect()
}

#[derive(Serialize)]
pub struct EigenvalueRepr {
    pub kind: &'static str,
    pub coords: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radicand: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_part: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_bits: Option<u32>,
    pub decimal: String,
}

pub fn eigenvalue_repr(e: &Eigenvalue) -> EigenvalueRepr {
    match e {
        Eigenvalue::Base(x) => EigenvalueRepr {
            kind: "base",
            coords: elem_coords(x),
            radicand: None,
            sqrt_part: None,
            certificate_bits: None,
            decimal: e.decimal(DECIMAL_DIGITS),
        },
        Eigenvalue::Quad(x) => EigenvalueRepr {
            kind: "quad",
            coords: elem_coords(x.u()),
            radicand: Some(elem_coords(x.ext().radicand())),
            sqrt_part: Some(elem_coords(x.v())),
            certificate_bits: Some(x.ext().certificate_bits()),
            decimal: e.decimal(DECIMAL_DIGITS),
        },
    }
}

#[derive(Serialize)]
pub struct ClassificationRepr {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<String>>,
}

pub fn classification_repr(c: &Classification) -> ClassificationRepr {
    match c {
        Classification::Cond1 => ClassificationRepr { kind: "cond1", relation: None },
        Classification::Cond2(m) => ClassificationRepr {
            kind: "cond2",
            relation: Some(m.iter().map(|x| x.to_string()).collect()),
        },
        Classification::Neither => ClassificationRepr { kind: "neither", relation: None },
    }
}

#[derive(Serialize)]
pub struct InfinityPointRepr {
    pub direction: Vec<Vec<String>>,
    pub direction_decimal: Vec<String>,
    pub direction_normalized: Vec<Vec<String>>,
    pub gamma: Vec<String>,
    pub dp_spectrum: Vec<EigenvalueRepr>,
    pub inf_spectrum: Vec<EigenvalueRepr>,
    pub classification: ClassificationRepr,
    pub multiplicity_one: bool,
}

pub fn infinity_point_repr(p: &InfinityPointReport) -> InfinityPointRepr {
    InfinityPointRepr {
        direction: vector_coords(&p.direction),
        direction_decimal: vector_decimals(&p.direction),
        direction_normalized: vector_coords(&p.direction_normalized),
        gamma: elem_coords(&p.gamma),
        dp_spectrum: p.dp_spectrum.iter().map(eigenvalue_repr).collect(),
        inf_spectrum: p.inf_spectrum.iter().map(eigenvalue_repr).collect(),
        classification: classification_repr(&p.classification),
        multiplicity_one: p.multiplicity_one,
    }
}

#[derive(Serialize)]
pub struct VerdictRepr {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct PropertyERepr {
    pub tower: Vec<i64>,
    pub points: Vec<InfinityPointRepr>,
    pub count: usize,
    pub expected_count: String,
    pub complete: bool,
    pub verdict: VerdictRepr,
    pub curve_bound: String,
    pub property_s_note: String,
}

pub fn property_e_repr(r: &PropertyEReport, tower: &[i64]) -> PropertyERepr {
    let verdict = match &r.verdict {
        Verdict::Satisfied => VerdictRepr { kind: "satisfied", witness: None },
        Verdict::Violated(w) => VerdictRepr { kind: "violated", witness: Some(w.clone()) },
        Verdict::Incomplete => VerdictRepr { kind: "incomplete", witness: None },
    };
    PropertyERepr {
        tower: tower.to_vec(),
        points: r.points.iter().map(infinity_point_repr).collect(),
        count: r.points.len(),
        expected_count: r.expected_count.to_string(),
        complete: r.complete,
        verdict,
        curve_bound: r.curve_bound.to_string(),
        property_s_note: r.property_s_note.clone(),
    }
}

/// Minimal mirror for reading a stored report back (bounds consumes the
/// verdict only).
#[derive(Deserialize)]
pub struct PropertyEVerdictOnly {
    pub verdict: VerdictKindOnly,
}

#[derive(Deserialize)]
pub struct VerdictKindOnly {
    pub kind: String,
}

#[derive(Serialize)]
pub struct SeventhRepr {
    pub seventh: Vec<Vec<String>>,
    pub seventh_decimal: Vec<String>,
    pub resultant_x3: MPolyRepr,
    pub resultant_x3_degree: u64,
    pub quartic_x3: MPolyRepr,
    pub resultant_x2: MPolyRepr,
    pub quartic_x2: MPolyRepr,
}

pub fn seventh_repr(r: &SeventhReport) -> SeventhRepr {
    SeventhRepr {
        seventh: vector_coords(&r.seventh),
        seventh_decimal: vector_decimals(&r.seventh),
        resultant_x3: mpoly_to_json(&r.resultant_x3),
        resultant_x3_degree: r.resultant_x3.degree().unwrap_or(0),
        quartic_x3: mpoly_to_json(&r.quartic_x3),
        resultant_x2: mpoly_to_json(&r.resultant_x2),
        quartic_x2: mpoly_to_json(&r.quartic_x2),
    }
}

#[derive(Serialize)]
pub struct ConstructRepr {
    pub tower: Vec<i64>,
    pub gamma: Vec<Vec<Vec<String>>>,
    pub field: VectorFieldRepr,
    pub components_text: Vec<String>,
    pub theta: Vec<Vec<String>>,
    pub idempotents: Vec<Vec<Vec<String>>>,
    pub seventh: SeventhOutcomeRepr,
}

#[derive(Serialize)]
pub struct SeventhOutcomeRepr {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SeventhRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn construct_repr(
    df: &DistinguishedField,
    seventh: &Result<SeventhReport, crate::distinguished::DistinguishedError>,
) -> ConstructRepr {
    let tower = df.tower().discriminants().to_vec();
    let ctx = crate::parse_io::ParseContext::with_default_names(3, df.tower());
    let gamma_rows = (0..3)
        .map(|i| (0..3).map(|j| elem_coords(df.gamma.entry(i, j))).collect())
        .collect();
    let seventh = match seventh {
        Ok(r) => SeventhOutcomeRepr { status: "ok", report: Some(seventh_repr(r)), error: None },
        Err(e) => SeventhOutcomeRepr { status: "failed", report: None, error: Some(e.to_string()) },
    };
    ConstructRepr {
        tower,
        gamma: gamma_rows,
        field: vector_field_to_json(&df.field),
        components_text: df
            .field
            .components()
            .iter()
            .map(|c| crate::parse_io::print_poly(c, &ctx))
            .collect(),
        theta: df.theta.iter().map(elem_coords).collect(),
        idempotents: df.idempotents.iter().map(|v| vector_coords(v)).collect(),
        seventh,
    }
}

#[derive(Serialize)]
pub struct SampleRepr {
    pub count: u64,
    pub range: i64,
    pub seed: u64,
    pub det_a_nonzero: u64,
    pub construct_ok: u64,
    pub seventh_ok: u64,
    pub seven_distinct: u64,
    pub property_e_satisfied: u64,
    pub det_a_nonzero_fraction: String,
    pub construct_ok_fraction: String,
    pub seventh_ok_fraction: String,
    pub seven_distinct_fraction: String,
    pub property_e_satisfied_fraction: String,
}

pub fn sample_repr(s: &SampleStats) -> SampleRepr {
    let frac = |n: u64| rational_to_string(&s.fraction(n));
    SampleRepr {
        count: s.count,
        range: s.range,
        seed: s.seed,
        det_a_nonzero: s.det_a_nonzero,
        construct_ok: s.construct_ok,
        seventh_ok: s.seventh_ok,
        seven_distinct: s.seven_distinct,
        property_e_satisfied: s.property_e_satisfied,
        det_a_nonzero_fraction: frac(s.det_a_nonzero),
        construct_ok_fraction: frac(s.construct_ok),
        seventh_ok_fraction: frac(s.seventh_ok),
        seven_distinct_fraction: frac(s.seven_distinct),
        property_e_satisfied_fraction: frac(s.property_e_satisfied),
    }
}

#[derive(Serialize)]
pub struct SemiInvariantRepr {
    pub psi: MPolyRepr,
    pub psi_text: String,
    pub cofactor: MPolyRepr,
    pub cofactor_text: String,
    pub degree: u64,
}

pub fn semi_invariant_repr(si: &SemiInvariant, ctx: &crate::parse_io::ParseContext) -> SemiInvariantRepr {
    SemiInvariantRepr {
        psi: mpoly_to_json(&si.psi),
        psi_text: crate::parse_io::print_poly(&si.psi, ctx),
        cofactor: mpoly_to_json(&si.cofactor),
        cofactor_text: crate::parse_io::print_poly(&si.cofactor, ctx),
        degree: si.degree,
    }
}

#[derive(Serialize)]
pub struct VerifyRepr {
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_invariant: Option<SemiInvariantRepr>,
}

#[derive(Serialize)]
pub struct SearchRepr {
    pub dmax: u64,
    pub budget_exceeded: bool,
    pub note: String,
    pub found: Vec<SemiInvariantRepr>,
}

pub fn search_repr(out: &SearchOutput, dmax: u64, ctx: &crate::parse_io::ParseContext) -> SearchRepr {
    SearchRepr {
        dmax,
        budget_exceeded: out.budget_exceeded,
        note: out.irreducibility_note.to_string(),
        found: out.found.iter().map(|si| semi_invariant_repr(si, ctx)).collect(),
    }
}

#[derive(Serialize)]
pub struct MultiplierRepr {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<MPolyRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_text: Option<String>,
    /// If a multiplier of this product form exists, all exponents are 1
    /// and the factor degrees sum to m+n−1.
    pub expected_exponents: String,
    pub expected_degree_sum: u64,
}

pub fn multiplier_repr(
    out: &MultiplierOutcome,
    m: u64,
    n: usize,
    ctx: &crate::parse_io::ParseContext,
) -> MultiplierRepr {
    let (valid, residual, residual_text) = match out {
        MultiplierOutcome::Valid => (true, None, None),
        MultiplierOutcome::Invalid(r) => (
            false,
            Some(mpoly_to_json(r)),
            Some(crate::parse_io::print_poly(r, ctx)),
        ),
    };
    MultiplierRepr {
        valid,
        residual,
        residual_text,
        expected_exponents: "all exponents equal 1 when such a multiplier exists".to_string(),
        expected_degree_sum: m + n as u64 - 1,
    }
}

fn status_str(s: &CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::NotApplicable => "not_applicable",
    }
}

#[derive(Serialize)]
pub struct BoundsRepr {
    pub m: u64,
    pub n: usize,
    pub line_count_bound: String,
    pub curve_bound: String,
    pub multiplier_degree_sum: u64,
    pub degree_cap: u64,
    pub product_check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_value: Option<String>,
    pub subset_sum_check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset_sum_value: Option<String>,
    pub pair_bound_check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_sum_value: Option<String>,
    pub exponent_check: &'static str,
    pub multiplier_sum_check: &'static str,
    pub hypotheses: Vec<String>,
}

pub fn bounds_repr(r: &BoundsReport) -> BoundsRepr {
    BoundsRepr {
        m: r.m,
        n: r.n,
        line_count_bound: r.line_count_bound.to_string(),
        curve_bound: r.line_count_bound.to_string(),
        multiplier_degree_sum: r.multiplier_degree_sum,
        degree_cap: r.degree_cap,
        product_check: status_str(&r.product_check),
        product_value: r.product_value.as_ref().map(|v| v.to_string()),
        subset_sum_check: status_str(&r.subset_sum_check),
        subset_sum_value: r.subset_sum_value.as_ref().map(rational_to_string),
        pair_bound_check: status_str(&r.pair_bound_check),
        pair_sum_value: r.pair_sum_value.as_ref().map(|v| v.to_string()),
        exponent_check: status_str(&r.exponent_check),
        multiplier_sum_check: status_str(&r.multiplier_sum_check),
        hypotheses: r.hypotheses.clone(),
    }
}

#[derive(Serialize)]
pub struct ChartRepr {
    pub direction: Vec<Vec<String>>,
    pub matrix: Vec<Vec<Vec<String>>>,
    pub matrix_inverse: Vec<Vec<Vec<String>>>,
}

pub fn chart_repr(chart: &PoincareChart) -> ChartRepr {
    let rows = |m: &crate::poly::FieldMatrix| {
        m.rows()
            .iter()
            .map(|row| row.iter().map(elem_coords).collect())
            .collect()
    };
    ChartRepr {
        direction: vector_coords(chart.direction()),
        matrix: rows(chart.matrix()),
        matrix_inverse: rows(chart.matrix_inverse()),
    }
}

#[derive(Serialize)]
pub struct TransformPolyRepr {
    pub chart: ChartRepr,
    pub result: MPolyRepr,
    pub result_text: String,
}

#[derive(Serialize)]
pub struct TransformFieldRepr {
    pub chart: ChartRepr,
    pub result: VectorFieldRepr,
    pub result_text: Vec<String>,
}

pub fn transform_poly_repr(chart: &PoincareChart, result: &MPoly) -> TransformPolyRepr {
    let ctx = crate::parse_io::ParseContext::with_default_names(result.nvars(), result.tower());
    TransformPolyRepr {
        chart: chart_repr(chart),
        result: mpoly_to_json(result),
        result_text: crate::parse_io::print_poly(result, &ctx),
    }
}

pub fn transform_field_repr(
    chart: &PoincareChart,
    result: &crate::poly::PolyVectorField,
) -> TransformFieldRepr {
    let ctx = crate::parse_io::ParseContext::with_default_names(result.dim(), result.tower());
    TransformFieldRepr {
        chart: chart_repr(chart),
        result: vector_field_to_json(result),
        result_text: result
            .components()
            .iter()
            .map(|c| crate::parse_io::print_poly(c, &ctx))
            .collect(),
    }
}
