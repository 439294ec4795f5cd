//! Deterministic pretty printer. `parse_poly(print_poly(p)) == p` holds on
//! the value level.

use num_traits::{One, Signed, Zero};

use crate::exact::{FieldElem, Rational};
use crate::poly::{MPoly, Mono};

use super::ParseContext;

fn mono_string(m: &Mono, ctx: &ParseContext) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ctx.var_name(i), e)),
        }
    }
    parts.join("*")
}

/// Render a field element as a factor: plain rational when possible,
/// otherwise a parenthesized sum of surd terms.
fn coeff_string(c: &FieldElem, ctx: &ParseContext) -> (bool, String) {
    if c.is_rational() {
        let r = c.rational_part();
        let abs = r.abs();
        (r.is_negative(), rational_factor(&abs))
    } else {
        let nonzero: Vec<usize> =
            (0..c.coords().len()).filter(|&s| !c.coords()[s].is_zero()).collect();
        if nonzero.len() == 1 {
            let s = nonzero[0];
            let r = &c.coords()[s];
            let abs = r.abs();
            let surd = ctx.surd_name(s);
            if abs.is_one() {
                (r.is_negative(), surd)
            } else {
                (r.is_negative(), format!("{}*{}", rational_factor(&abs), surd))
            }
        } else {
            (false, format!("({})", field_elem_expr(c, ctx)))
        }
    }
}

fn rational_factor(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Full sum form of a field element, grammar-compatible.
pub(super) fn field_elem_expr(c: &FieldElem, ctx: &ParseContext) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (s, r) in c.coords().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let abs = r.abs();
        let neg = r.is_negative();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if s == 0 {
            out.push_str(&rational_factor(&abs));
        } else {
            let surd = ctx.surd_name(s);
            if abs.is_one() {
                out.push_str(&surd);
            } else {
                out.push_str(&format!("{}*{}", rational_factor(&abs), surd));
            }
        }
    }
    out
}

/// Canonical-order printing: terms in descending graded reverse lex.
pub fn print_poly(p: &MPoly, ctx: &ParseContext) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    let terms: Vec<(&Mono, &FieldElem)> = p.terms().collect();
    for (m, c) in terms.into_iter().rev() {
        let (neg, cs) = coeff_string(c, ctx);
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let ms = mono_string(m, ctx);
        if ms.is_empty() {
            out.push_str(&cs);
        } else if cs == "1" {
            out.push_str(&ms);
        } else {
            out.push_str(&cs);
            out.push('*');
            out.push_str(&ms);
        }
    }
    out
}
