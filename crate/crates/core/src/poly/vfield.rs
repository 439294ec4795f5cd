//! Polynomial vector fields with cached degree and homogeneous
//! decomposition; Lie derivative and divergence.

use std::sync::Arc;

use crate::exact::{FieldElem, FieldTower};

use super::{MPoly, PolyError};

/// An n-tuple of polynomials in n variables, with the total degree m and
/// the homogeneous decomposition f⁽⁰⁾+…+f⁽ᵐ⁾ of each component cached.
///
/// The zero field is representable (it arises as the reduction of radial
/// fields) and reports degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    n: usize,
    components: Vec<MPoly>,
    degree: u64,
    parts: Vec<Vec<MPoly>>,
}

impl PolyVectorField {
    pub fn new(components: Vec<MPoly>) -> Result<Self, PolyError> {
        let n = components.len();
        if n == 0 {
            return Err(PolyError::DimensionMismatch);
        }
        if components.iter().any(|c| c.nvars() != n) {
            return Err(PolyError::DimensionMismatch);
        }
        let tower = components
            .iter()
            .max_by_key(|c| c.tower().dim())
            .map(|c| Arc::clone(c.tower()))
            .unwrap();
        let components: Vec<MPoly> = components
            .into_iter()
            .map(|c| c.promote(&tower))
            .collect::<Result<_, _>>()?;
        let degree = components.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
        let parts = components
            .iter()
            .map(|c| (0..=degree).map(|d| c.homogeneous_part(d)).collect())
            .collect();
        Ok(PolyVectorField { n, components, degree, parts })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MPoly {
        &self.components[i]
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.components[0].tower()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MPoly::is_zero)
    }

    /// Homogeneous part of degree d of every component.
    pub fn homogeneous_part(&self, d: u64) -> Vec<MPoly> {
        self.parts.iter().map(|p| p[d as usize].clone()).collect()
    }

    /// Top-degree part f⁽ᵐ⁾.
    pub fn top_part(&self) -> Vec<MPoly> {
        self.homogeneous_part(self.degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components.iter().all(|c| c.is_zero() || (c.is_homogeneous() && c.degree() == Some(self.degree)))
    }

    /// Lie derivative Σᵢ fᵢ·∂ψ/∂xᵢ of a scalar polynomial along the field.
    pub fn lie_derivative(&self, psi: &MPoly) -> Result<MPoly, PolyError> {
        if psi.nvars() != self.n {
            return Err(PolyError::DimensionMismatch);
        }
        let mut acc = MPoly::zero(self.n, self.tower());
        for (i, f) in self.components.iter().enumerate() {
            acc = acc.add(&f.mul(&psi.partial_derivative(i)));
        }
        Ok(acc)
    }

    /// Divergence Σᵢ ∂fᵢ/∂xᵢ.
    pub fn divergence(&self) -> MPoly {
        let mut acc = MPoly::zero(self.n, self.tower());
        for (i, f) in self.components.iter().enumerate() {
            acc = acc.add(&f.partial_derivative(i));
        }
        acc
    }

    /// Evaluate all components at a point.
    pub fn eval(&self, point: &[FieldElem]) -> Vec<FieldElem> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Jacobian matrix evaluated at a point.
    pub fn jacobian_at(&self, point: &[FieldElem]) -> super::FieldMatrix {
        let entries: Vec<Vec<FieldElem>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.components[i].partial_derivative(j).eval(point))
                    .collect()
            })
            .collect();
        super::FieldMatrix::from_rows(entries)
    }

    /// Matrix of the linear part (the linearization at the origin).
    pub fn linear_part(&self) -> super::FieldMatrix {
        let tower = self.tower();
        let entries: Vec<Vec<FieldElem>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let mono = super::Mono::var(self.n, j);
                        self.components[i]
                            .coeff(&mono)
                            .cloned()
                            .unwrap_or_else(|| FieldElem::zero(tower))
                    })
                    .collect()
            })
            .collect();
        super::FieldMatrix::from_rows(entries)
    }
}
