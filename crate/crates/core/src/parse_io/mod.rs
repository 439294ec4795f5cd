//! Text grammar for polynomials and field constants, deterministic pretty
//! printing, and JSON serialization of every value and report type.
//!
//! Grammar (division only by rational literals keeps results polynomial):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' factor) | ('/' intlit))*
//! factor := intlit | surd | var ('^' intlit)? | '(' expr ')'
//! ```

mod json;
mod parser;
mod printer;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exact::{FieldElem, FieldTower};

pub use json::{
    field_elem_from_json, field_elem_to_json, mpoly_from_json, mpoly_to_json,
    vector_field_from_json, vector_field_to_json, FieldElemRepr, MPolyRepr, TermRepr,
    VectorFieldRepr,
};
pub use parser::{parse_constant, parse_poly};
pub use printer::print_poly;

/// Names available while parsing and printing: ordered variables and the
/// surd symbols of the tower basis.
#[derive(Clone, Debug)]
pub struct ParseContext {
    vars: Vec<String>,
    tower: Arc<FieldTower>,
    surds: BTreeMap<String, usize>,
}

impl ParseContext {
    /// Context with variables x1..xn over the given tower.
    pub fn with_default_names(n: usize, tower: &Arc<FieldTower>) -> Self {
        let vars = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_names(vars, tower)
    }

    pub fn with_names(vars: Vec<String>, tower: &Arc<FieldTower>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "variable names must be distinct");
        }
        let mut surds = BTreeMap::new();
        for s in 1..tower.dim() {
            surds.insert(format!("sqrt{}", tower.basis_radicand(s)), s);
        }
        ParseContext { vars, tower: Arc::clone(tower), surds }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn surd_index(&self, name: &str) -> Option<usize> {
        self.surds.get(name).copied()
    }

    pub fn surd_name(&self, basis_index: usize) -> String {
        format!("sqrt{}", self.tower.basis_radicand(basis_index))
    }
}

/// Parse failure with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected input; carries what was expected.
    Syntax(String),
    UnknownSymbol(String),
    NegativeExponent,
    /// Division by zero or by a non-literal.
    BadDivisor,
    EmptyInput,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(expected) => {
                write!(f, "syntax error at byte {}: expected {}", self.position, expected)
            }
            ParseErrorKind::UnknownSymbol(s) => {
                write!(f, "unknown symbol `{s}` at byte {}", self.position)
            }
            ParseErrorKind::NegativeExponent => {
                write!(f, "negative exponent at byte {}", self.position)
            }
            ParseErrorKind::BadDivisor => {
                write!(f, "division must be by a nonzero integer literal (byte {})", self.position)
            }
            ParseErrorKind::EmptyInput => write!(f, "empty input"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Convenience: parse a constant (no variables) over a tower.
pub fn parse_field_constant(
    text: &str,
    tower: &Arc<FieldTower>,
) -> Result<FieldElem, ParseError> {
    let ctx = ParseContext::with_default_names(0, tower);
    parse_constant(text, &ctx)
}
