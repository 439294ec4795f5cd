//! JSON representations with bit-exact round-trips. Rationals are `p` or
//! `p/q` strings; field elements carry their tower and coordinate vector.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::{
    create_tower, rational_from_str, rational_to_string, FieldElem, FieldTower,
};
use crate::poly::{MPoly, PolyVectorField};

/// `{"tower":[2,3,5],"coords":["1/2","0",…]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldElemRepr {
    pub tower: Vec<i64>,
    pub coords: Vec<String>,
}

pub fn field_elem_to_json(e: &FieldElem) -> FieldElemRepr {
    FieldElemRepr {
        tower: e.tower().discriminants().to_vec(),
        coords: e.coords().iter().map(rational_to_string).collect(),
    }
}

pub fn field_elem_from_json(repr: &FieldElemRepr) -> Result<FieldElem, String> {
    let tower = create_tower(&repr.tower).map_err(|e| e.to_string())?;
    if repr.coords.len() != tower.dim() {
        return Err(format!(
            "coordinate count {} does not match tower dimension {}",
            repr.coords.len(),
            tower.dim()
        ));
    }
    let coords = repr
        .coords
        .iter()
        .map(|s| rational_from_str(s).ok_or_else(|| format!("bad rational `{s}`")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FieldElem::from_coords(&tower, coords))
}

/// One term of an MPoly: exponent vector and coefficient coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRepr {
    pub exp: Vec<u32>,
    pub coef: Vec<String>,
}

/// `{"nvars":3,"tower":[…],"terms":[{"exp":[2,0,0],"coef":[…]},…]}` with
/// terms sorted in the canonical descending order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MPolyRepr {
    pub nvars: usize,
    pub tower: Vec<i64>,
    pub terms: Vec<TermRepr>,
}

pub fn mpoly_to_json(p: &MPoly) -> MPolyRepr {
    let terms: Vec<TermRepr> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(m, c)| TermRepr {
            exp: m.0.clone(),
            coef: c.coords().iter().map(rational_to_string).collect(),
        })
        .collect();
    MPolyRepr { nvars: p.nvars(), tower: p.tower().discriminants().to_vec(), terms }
}

pub fn mpoly_from_json(repr: &MPolyRepr) -> Result<MPoly, String> {
    let tower = create_tower(&repr.tower).map_err(|e| e.to_string())?;
    let mut terms = Vec::with_capacity(repr.terms.len());
    for t in &repr.terms {
        if t.exp.len() != repr.nvars {
            return Err("exponent vector length must equal nvars".into());
        }
        if t.coef.len() != tower.dim() {
            return Err("coefficient coordinate count must match tower dimension".into());
        }
        let coords = t
            .coef
            .iter()
            .map(|s| rational_from_str(s).ok_or_else(|| format!("bad rational `{s}`")))
            .collect::<Result<Vec<_>, _>>()?;
        terms.push((t.exp.clone(), FieldElem::from_coords(&tower, coords)));
    }
    Ok(MPoly::from_terms(repr.nvars, &tower, terms))
}

/// `{"n":3,"m":2,"tower":[…],"components":[…]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFieldRepr {
    pub n: usize,
    pub m: u64,
    pub tower: Vec<i64>,
    pub components: Vec<Vec<TermRepr>>,
}

pub fn vector_field_to_json(f: &PolyVectorField) -> VectorFieldRepr {
    VectorFieldRepr {
        n: f.dim(),
        m: f.degree(),
        tower: f.tower().discriminants().to_vec(),
        components: f.components().iter().map(|c| mpoly_to_json(c).terms).collect(),
    }
}

pub fn vector_field_from_json(repr: &VectorFieldRepr) -> Result<PolyVectorField, String> {
    let tower: Arc<FieldTower> = create_tower(&repr.tower).map_err(|e| e.to_string())?;
    let components = repr
        .components
        .iter()
        .map(|terms| {
            mpoly_from_json(&MPolyRepr {
                nvars: repr.n,
                tower: tower.discriminants().to_vec(),
                terms: terms.clone(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f = PolyVectorField::new(components).map_err(|e| e.to_string())?;
    if f.degree() != repr.m {
        return Err(format!("declared degree {} but computed {}", repr.m, f.degree()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn field_elem_round_trip_is_bit_exact() {
        let t = create_tower(&[2, 3, 5]).unwrap();
        let e = FieldElem::from_coords(
            &t,
            (0..8)
                .map(|i| Rational::new((i as i64 - 3).into(), (i as i64 + 2).into()))
                .collect(),
        );
        let json = serde_json::to_string(&field_elem_to_json(&e)).unwrap();
        let back: FieldElemRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(field_elem_from_json(&back).unwrap(), e);
        let json2 = serde_json::to_string(&field_elem_to_json(&field_elem_from_json(&back).unwrap())).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn mpoly_round_trip() {
        let t = create_tower(&[2]).unwrap();
        let x = MPoly::var(2, 0, &t);
        let y = MPoly::var(2, 1, &t);
        let p = x.pow(2).sub(&y.mul_elem(&FieldElem::basis(&t, 1)));
        let repr = mpoly_to_json(&p);
        assert_eq!(mpoly_from_json(&repr).unwrap(), p);
    }

    #[test]
    fn vector_field_round_trip() {
        let t = create_tower(&[]).unwrap();
        let x = MPoly::var(2, 0, &t);
        let y = MPoly::var(2, 1, &t);
        let f = PolyVectorField::new(vec![x.pow(2), x.mul(&y)]).unwrap();
        let repr = vector_field_to_json(&f);
        let back = vector_field_from_json(&repr).unwrap();
        assert_eq!(back, f);
    }
}
