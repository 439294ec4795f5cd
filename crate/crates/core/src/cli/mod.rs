//! Command-line entry point wiring all modules: parse inputs, dispatch
//! subcommands, emit exact JSON reports with advisory decimal renderings.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error. Errors go to
//! stderr as structured JSON. Given identical inputs, flags, and seed the
//! output is byte-identical.

pub mod reports;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::darboux::{
    bounds_report, search_semi_invariants, verify_jacobi_multiplier, verify_semi_invariant,
    BoundsInput, SemiOutcome,
};
use crate::distinguished::{construct_distinguished, seventh_idempotent, GammaSpec};
use crate::exact::{create_tower, rational_from_str, FieldElem, FieldTower};
use crate::infinity::property_e_report;
use crate::parse_io::{parse_field_constant, parse_poly, vector_field_from_json, ParseContext, VectorFieldRepr};
use crate::poly::PolyVectorField;
use crate::transform::{poincare_field, poincare_poly, PoincareChart};

#[derive(Parser)]
#[command(
    name = "invariant-algebra",
    version,
    about = "Exact analysis of invariant algebraic surfaces of polynomial vector fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working precision in bits for square-root certificates (>= 64).
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,
    /// Total-degree cap for the bounded elimination in `semi --search`.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for the sampling experiment.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Poincaré transform of a polynomial or a vector field with respect
    /// to a direction.
    Transform {
        /// Comma-separated direction entries (constant expressions, e.g.
        /// "1,0,0" or "sqrt2,sqrt3,0").
        #[arg(long)]
        direction: String,
        /// Inline polynomial to transform.
        #[arg(long, conflicts_with = "field")]
        poly: Option<String>,
        /// File containing the polynomial text to transform.
        #[arg(long, conflicts_with_all = ["poly", "field"])]
        poly_file: Option<PathBuf>,
        /// Vector-field JSON file to transform.
        #[arg(long)]
        field: Option<PathBuf>,
        /// Tower discriminants for --poly mode (e.g. "2,3,5"; empty = Q).
        #[arg(long, default_value = "")]
        discs: String,
    },
    /// Stationary points at infinity: spectra, eigenvalue dichotomy
    /// (condition 1/2), and the property-E verdict for supplied lines.
    Analyze {
        #[arg(long)]
        field: PathBuf,
        /// JSON file {"lines":[["1","0","0"],…]} of invariant directions.
        #[arg(long)]
        lines: PathBuf,
    },
    /// Construct the distinguished quadratic vector field with prescribed
    /// idempotents and compute its seventh idempotent.
    Construct {
        /// JSON file {"discriminants":[…],"gamma":[[…],…]} of idempotent
        /// coordinates.
        #[arg(long)]
        gamma: PathBuf,
    },
    /// Seeded genericity experiment over random rational idempotent
    /// prescriptions.
    Sample {
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        range: i64,
    },
    /// Verify a polynomial as a semi-invariant (Darboux polynomial) or
    /// search all semi-invariants up to a degree bound.
    Semi {
        #[arg(long)]
        field: PathBuf,
        /// Polynomial text to verify.
        #[arg(long, conflicts_with = "search")]
        verify: Option<String>,
        /// File containing the polynomial text to verify.
        #[arg(long, conflicts_with_all = ["verify", "search"])]
        verify_file: Option<PathBuf>,
        /// Run the bounded search instead.
        #[arg(long)]
        search: bool,
        /// Degree bound for the search.
        #[arg(long, default_value_t = 1)]
        dmax: u64,
    },
    /// Check the Jacobi multiplier identity for a product of
    /// semi-invariant powers.
    Multiplier {
        #[arg(long)]
        field: PathBuf,
        /// JSON file {"factors":[{"poly":"x1","exponent":"1"},…]}.
        #[arg(long)]
        factors: PathBuf,
    },
    /// Closed-form degree-bound report: line-count bound, multiplier
    /// degree sum, degree cap, and instance checks.
    Bounds {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: usize,
        /// Comma-separated degrees of verified semi-invariants.
        #[arg(long)]
        degrees: Option<String>,
        /// Comma-separated multiplier exponents (rationals).
        #[arg(long)]
        exponents: Option<String>,
        /// Property-E report JSON whose verdict certifies the hypothesis.
        #[arg(long)]
        property_e: Option<PathBuf>,
    },
}

/// Error category mapped to the exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: malformed invocation or unparseable input.
    Usage { kind: String, message: String, position: Option<usize> },
    /// Exit 1: a domain operation failed.
    Domain { kind: String, message: String },
}

impl CliError {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        CliError::Usage { kind: kind.to_string(), message: message.into(), position: None }
    }

    fn domain(kind: &str, message: impl Into<String>) -> Self {
        CliError::Domain { kind: kind.to_string(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

#[derive(Serialize)]
struct ErrorRepr<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

pub fn error_json(err: &CliError) -> String {
    let (kind, message, position) = match err {
        CliError::Usage { kind, message, position } => (kind, message, *position),
        CliError::Domain { kind, message } => (kind, message, None),
    };
    serde_json::to_string(&ErrorRepr {
        error: ErrorBody { kind, message, position },
    })
    .expect("error serialization cannot fail")
}

fn from_parse_error(e: crate::parse_io::ParseError) -> CliError {
    let kind = match &e.kind {
        crate::parse_io::ParseErrorKind::Syntax(_) => "SyntaxError",
        crate::parse_io::ParseErrorKind::UnknownSymbol(_) => "UnknownSymbol",
        crate::parse_io::ParseErrorKind::NegativeExponent => "NegativeExponent",
        crate::parse_io::ParseErrorKind::BadDivisor => "BadDivisor",
        crate::parse_io::ParseErrorKind::EmptyInput => "EmptyInput",
    };
    CliError::Usage { kind: kind.to_string(), message: e.to_string(), position: Some(e.position) }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage("FileError", format!("{}: {e}", path.display())))
}

/// Parse a vector field from its JSON text.
pub fn field_from_json_str(text: &str) -> Result<PolyVectorField, CliError> {
    let repr: VectorFieldRepr = serde_json::from_str(text)
        .map_err(|e| CliError::usage("JsonError", e.to_string()))?;
    vector_field_from_json(&repr).map_err(|e| CliError::usage("FieldSpecError", e))
}


#[derive(Deserialize)]
struct GammaFile {
    #[serde(default)]
    discriminants: Vec<i64>,
    gamma: Vec<Vec<String>>,
}

/// Parse a gamma prescription from its JSON text.
pub fn gamma_from_json_str(text: &str) -> Result<GammaSpec, CliError> {
    let file: GammaFile = serde_json::from_str(text)
        .map_err(|e| CliError::usage("JsonError", e.to_string()))?;
    let tower = create_tower(&file.discriminants)
        .map_err(|e| CliError::usage("FieldSpecError", e.to_string()))?;
    if file.gamma.len() != 3 || file.gamma.iter().any(|r| r.len() != 3) {
        return Err(CliError::usage("GammaSpecError", "gamma must be a 3x3 matrix"));
    }
    let mut rows: Vec<[FieldElem; 3]> = Vec::with_capacity(3);
    for row in &file.gamma {
        let mut parsed = Vec::with_capacity(3);
        for cell in row {
            parsed.push(parse_field_constant(cell, &tower).map_err(from_parse_error)?);
        }
        rows.push([parsed[0].clone(), parsed[1].clone(), parsed[2].clone()]);
    }
    Ok(GammaSpec::new([rows[0].clone(), rows[1].clone(), rows[2].clone()]))
}


#[derive(Deserialize)]
struct LinesFile {
    lines: Vec<Vec<String>>,
}

/// Parse an invariant-direction list from its JSON text.
pub fn lines_from_json_str(
    text: &str,
    tower: &Arc<FieldTower>,
    n: usize,
) -> Result<Vec<Vec<FieldElem>>, CliError> {
    let file: LinesFile = serde_json::from_str(text)
        .map_err(|e| CliError::usage("JsonError", e.to_string()))?;
    let mut out = Vec::with_capacity(file.lines.len());
    for line in &file.lines {
        if line.len() != n {
            return Err(CliError::usage(
                "LineSpecError",
                format!("direction must have {n} entries"),
            ));
        }
        let mut v = Vec::with_capacity(n);
        for cell in line {
            v.push(parse_field_constant(cell, tower).map_err(from_parse_error)?);
        }
        out.push(v);
    }
    Ok(out)
}


#[derive(Deserialize)]
struct FactorsFile {
    factors: Vec<FactorEntry>,
}

#[derive(Deserialize)]
struct FactorEntry {
    poly: String,
    exponent: String,
}

fn parse_direction(text: &str, tower: &Arc<FieldTower>) -> Result<Vec<FieldElem>, CliError> {
    let entries: Vec<&str> = text.split(',').collect();
    let mut v = Vec::with_capacity(entries.len());
    for e in entries {
        v.push(parse_field_constant(e, tower).map_err(from_parse_error)?);
    }
    Ok(v)
}

fn parse_discs(text: &str) -> Result<Arc<FieldTower>, CliError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(FieldTower::rationals());
    }
    let discs: Result<Vec<i64>, _> = trimmed.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let discs = discs.map_err(|e| CliError::usage("FieldSpecError", e.to_string()))?;
    create_tower(&discs).map_err(|e| CliError::usage("FieldSpecError", e.to_string()))
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}


/// JSON-in/JSON-out operations shared by the command line and the C ABI.
pub mod ops {
    use super::*;

    pub fn construct(gamma_json: &str) -> Result<String, CliError> {
        let spec = gamma_from_json_str(gamma_json)?;
        let df = construct_distinguished(&spec)
            .map_err(|e| CliError::domain("DistinguishedError", e.to_string()))?;
        let seventh = seventh_idempotent(&df);
        Ok(pretty(&reports::construct_repr(&df, &seventh)))
    }

    pub fn analyze(field_json: &str, lines_json: &str, precision_bits: u32) -> Result<String, CliError> {
        let f = field_from_json_str(field_json)?;
        let dirs = lines_from_json_str(lines_json, f.tower(), f.dim())?;
        let report = property_e_report(&f, &dirs, precision_bits)
            .map_err(|e| CliError::domain("InfinityError", e.to_string()))?;
        Ok(pretty(&reports::property_e_repr(&report, f.tower().discriminants())))
    }

    pub fn semi_verify(field_json: &str, psi_text: &str) -> Result<String, CliError> {
        let f = field_from_json_str(field_json)?;
        let ctx = ParseContext::with_default_names(f.dim(), f.tower());
        let psi = parse_poly(psi_text, &ctx).map_err(from_parse_error)?;
        let outcome = verify_semi_invariant(&f, &psi)
            .map_err(|e| CliError::domain("DarbouxError", e.to_string()))?;
        let repr = match outcome {
            SemiOutcome::Verified(si) => reports::VerifyRepr {
                verified: true,
                semi_invariant: Some(reports::semi_invariant_repr(&si, &ctx)),
            },
            SemiOutcome::NotSemiInvariant => {
                reports::VerifyRepr { verified: false, semi_invariant: None }
            }
        };
        Ok(pretty(&repr))
    }

    pub fn semi_search(field_json: &str, dmax: u64, budget: Option<u64>) -> Result<String, CliError> {
        if dmax < 1 {
            return Err(CliError::usage("ArgumentError", "dmax must be at least 1"));
        }
        let f = field_from_json_str(field_json)?;
        let ctx = ParseContext::with_default_names(f.dim(), f.tower());
        let out = search_semi_invariants(&f, dmax, budget)
            .map_err(|e| CliError::domain("DarbouxError", e.to_string()))?;
        Ok(pretty(&reports::search_repr(&out, dmax, &ctx)))
    }

    pub fn multiplier(field_json: &str, factors_json: &str) -> Result<String, CliError> {
        let f = field_from_json_str(field_json)?;
        let ctx = ParseContext::with_default_names(f.dim(), f.tower());
        let file: FactorsFile = serde_json::from_str(factors_json)
            .map_err(|e| CliError::usage("JsonError", e.to_string()))?;
        let mut parsed = Vec::with_capacity(file.factors.len());
        for entry in &file.factors {
            let poly = parse_poly(&entry.poly, &ctx).map_err(from_parse_error)?;
            let exp = rational_from_str(&entry.exponent).ok_or_else(|| {
                CliError::usage("ExponentError", format!("bad exponent `{}`", entry.exponent))
            })?;
            parsed.push((poly, exp));
        }
        let outcome = verify_jacobi_multiplier(&f, &parsed)
            .map_err(|e| CliError::domain("DarbouxError", e.to_string()))?;
        Ok(pretty(&reports::multiplier_repr(&outcome, f.degree(), f.dim(), &ctx)))
    }

    pub fn sample(count: u64, range: i64, seed: u64, precision_bits: u32) -> Result<String, CliError> {
        if count < 1 {
            return Err(CliError::usage("ArgumentError", "count must be at least 1"));
        }
        if range < 1 {
            return Err(CliError::usage("ArgumentError", "range must be at least 1"));
        }
        let stats = crate::distinguished::sample_genericity(count, range, seed, precision_bits);
        Ok(pretty(&reports::sample_repr(&stats)))
    }

    pub fn bounds(
        m: u64,
        n: usize,
        degrees: Option<Vec<u64>>,
        exponents: Option<Vec<crate::exact::Rational>>,
        property_e_certified: Option<bool>,
    ) -> Result<String, CliError> {
        if m < 2 || n < 2 {
            return Err(CliError::usage("ArgumentError", "bounds require m >= 2 and n >= 2"));
        }
        let input = BoundsInput { degrees, multiplier_exponents: exponents, property_e_certified };
        Ok(pretty(&reports::bounds_repr(&bounds_report(m, n, &input))))
    }

    pub fn transform_poly_text(
        discs: &str,
        direction: &str,
        poly_text: &str,
    ) -> Result<String, CliError> {
        let tower = parse_discs(discs)?;
        let dir = parse_direction(direction, &tower)?;
        let ctx = ParseContext::with_default_names(dir.len(), &tower);
        let p = parse_poly(poly_text, &ctx).map_err(from_parse_error)?;
        let chart = PoincareChart::new(&dir)
            .map_err(|e| CliError::domain("TransformError", e.to_string()))?;
        let result = poincare_poly(&p, &chart)
            .map_err(|e| CliError::domain("TransformError", e.to_string()))?;
        Ok(pretty(&reports::transform_poly_repr(&chart, &result)))
    }

    pub fn transform_field_json(field_json: &str, direction: &str) -> Result<String, CliError> {
        let f = field_from_json_str(field_json)?;
        let dir = parse_direction(direction, f.tower())?;
        if dir.len() != f.dim() {
            return Err(CliError::usage(
                "DirectionError",
                "direction length must match the field dimension",
            ));
        }
        let chart = PoincareChart::new(&dir)
            .map_err(|e| CliError::domain("TransformError", e.to_string()))?;
        let result = poincare_field(&f, &chart)
            .map_err(|e| CliError::domain("TransformError", e.to_string()))?;
        Ok(pretty(&reports::transform_field_repr(&chart, &result)))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    if cli.precision < 64 {
        return Err(CliError::usage("PrecisionError", "precision must be at least 64 bits"));
    }
    if let Some(b) = cli.budget {
        if b < 1 {
            return Err(CliError::usage("BudgetError", "budget must be at least 1"));
        }
    }
    match &cli.command {
        Command::Transform { direction, poly, poly_file, field, discs } => {
            match (poly, poly_file, field) {
                (Some(text), None, None) => ops::transform_poly_text(discs, direction, text),
                (None, Some(path), None) => {
                    let text = read_file(path)?;
                    ops::transform_poly_text(discs, direction, text.trim())
                }
                (None, None, Some(path)) => {
                    let field_json = read_file(path)?;
                    ops::transform_field_json(&field_json, direction)
                }
                _ => Err(CliError::usage(
                    "ArgumentError",
                    "exactly one of --poly, --poly-file, or --field is required",
                )),
            }
        }
        Command::Analyze { field, lines } => {
            let field_json = read_file(field)?;
            let lines_json = read_file(lines)?;
            ops::analyze(&field_json, &lines_json, cli.precision)
        }
        Command::Construct { gamma } => {
            let gamma_json = read_file(gamma)?;
            ops::construct(&gamma_json)
        }
        Command::Sample { count, range } => ops::sample(*count, *range, cli.seed, cli.precision),
        Command::Semi { field, verify, verify_file, search, dmax } => {
            let field_json = read_file(field)?;
            if let Some(text) = verify {
                ops::semi_verify(&field_json, text)
            } else if let Some(path) = verify_file {
                let text = read_file(path)?;
                ops::semi_verify(&field_json, text.trim())
            } else if *search {
                ops::semi_search(&field_json, *dmax, cli.budget)
            } else {
                Err(CliError::usage("ArgumentError", "one of --verify, --verify-file, or --search is required"))
            }
        }
        Command::Multiplier { field, factors } => {
            let field_json = read_file(field)?;
            let factors_json = read_file(factors)?;
            ops::multiplier(&field_json, &factors_json)
        }
        Command::Bounds { m, n, degrees, exponents, property_e } => {
            let degrees = match degrees {
                Some(text) => Some(
                    text.split(',')
                        .map(|s| s.trim().parse::<u64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::usage("ArgumentError", e.to_string()))?,
                ),
                None => None,
            };
            let exps = match exponents {
                Some(text) => Some(
                    text.split(',')
                        .map(|s| {
                            rational_from_str(s.trim()).ok_or_else(|| {
                                CliError::usage("ExponentError", format!("bad exponent `{s}`"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
                None => None,
            };
            let certified = match property_e {
                Some(path) => {
                    let text = read_file(path)?;
                    let report: reports::PropertyEVerdictOnly = serde_json::from_str(&text)
                        .map_err(|e| {
                            CliError::usage("JsonError", format!("{}: {e}", path.display()))
                        })?;
                    Some(report.verdict.kind == "satisfied")
                }
                None => None,
            };
            ops::bounds(*m, *n, degrees, exps, certified)
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's rendered help/usage on stderr and its exit code
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(json) => match out_path {
            Some(path) => match std::fs::write(&path, json) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!(
                        "{}",
                        error_json(&CliError::usage(
                            "FileError",
                            format!("{}: {e}", path.display())
                        ))
                    );
                    2
                }
            },
            None => {
                print!("{json}");
                0
            }
        },
        Err(err) => {
            eprintln!("{}", error_json(&err));
            err.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_subcommand_runs() {
        let cli = Cli::try_parse_from([
            "invariant-algebra",
            "bounds",
            "--m",
            "2",
            "--n",
            "3",
            "--degrees",
            "1,1",
        ])
        .unwrap();
        let json = run(cli).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["line_count_bound"], "7");
        assert_eq!(v["multiplier_degree_sum"], 4);
        assert_eq!(v["degree_cap"], 3);
        assert_eq!(v["product_check"], "pass");
    }

    #[test]
    fn usage_errors_exit_two() {
        let cli = Cli::try_parse_from(["invariant-algebra", "bounds", "--m", "1", "--n", "3"])
            .unwrap();
        let err = run(cli).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn transform_poly_inline() {
        let cli = Cli::try_parse_from([
            "invariant-algebra",
            "transform",
            "--poly",
            "x1^2 + x2",
            "--direction",
            "1,0",
        ])
        .unwrap();
        let json = run(cli).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["result_text"], "x1*x2 + 1");
    }
}
