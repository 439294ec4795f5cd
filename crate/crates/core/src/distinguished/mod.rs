//! Distinguished quadratic vector fields in dimension three: construction
//! from prescribed idempotents, the seventh idempotent via resultant
//! elimination, and the seeded genericity experiment.

mod sample;
mod seventh;

use std::fmt;
use std::sync::Arc;

use crate::exact::{FieldElem, FieldTower, Rational};
use crate::poly::{FieldMatrix, MPoly, PolyVectorField};

pub use sample::{run_trial, sample_genericity, SampleStats, TrialOutcome};
pub use seventh::{seventh_idempotent, SeventhReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinguishedError {
    /// det A = 0: the idempotent system does not determine the field.
    SingularA,
    /// Internal consistency check failed; must never fire.
    VerificationFailed(&'static str),
    /// The resultant did not factor into the expected shape.
    DegenerateFactorization(&'static str),
    /// The eliminant denominator vanishes at the candidate point.
    B1Vanishes,
}

impl fmt::Display for DistinguishedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinguishedError::SingularA => write!(f, "idempotent matrix A is singular"),
            DistinguishedError::VerificationFailed(what) => {
                write!(f, "internal verification failed: {what}")
            }
            DistinguishedError::DegenerateFactorization(what) => {
                write!(f, "expected factor shape absent: {what}")
            }
            DistinguishedError::B1Vanishes => {
                write!(f, "eliminant denominator B1 vanishes at the candidate")
            }
        }
    }
}

impl std::error::Error for DistinguishedError {}

/// Prescribed idempotent coordinates: row i holds the coefficients of vᵢ
/// over the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSpec {
    tower: Arc<FieldTower>,
    rows: [[FieldElem; 3]; 3],
}

impl GammaSpec {
    pub fn new(rows: [[FieldElem; 3]; 3]) -> Self {
        let tower = rows
            .iter()
            .flatten()
            .max_by_key(|e| e.tower().dim())
            .map(|e| Arc::clone(e.tower()))
            .unwrap();
        let rows = rows.map(|row| {
            row.map(|e| e.promote(&tower).expect("gamma entries must share one tower"))
        });
        GammaSpec { tower, rows }
    }

    pub fn from_rationals(values: [[Rational; 3]; 3]) -> Self {
        let tower = FieldTower::rationals();
        Self::new(values.map(|row| row.map(|r| FieldElem::from_rational(&tower, r))))
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElem {
        &self.rows[i][j]
    }

    /// The prescribed idempotent vᵢ.
    pub fn idempotent(&self, i: usize) -> Vec<FieldElem> {
        self.rows[i].to_vec()
    }

    /// The matrix with rows (γᵢ₁γᵢ₂, γᵢ₂γᵢ₃, γᵢ₃γᵢ₁).
    pub fn matrix_a(&self) -> FieldMatrix {
        let prod = |i: usize, j: usize, k: usize| {
            self.rows[i][j].mul(&self.rows[i][k]).expect("aligned towers")
        };
        FieldMatrix::from_rows(
            (0..3)
                .map(|i| vec![prod(i, 0, 1), prod(i, 1, 2), prod(i, 2, 0)])
                .collect(),
        )
    }
}

/// A constructed quadratic field with its idempotent list and the nine
/// cross-term coefficients of the normal form
/// pₖ = xₖ² + θ·x₁x₂ + θ·x₂x₃ + θ·x₃x₁.
#[derive(Clone, Debug)]
pub struct DistinguishedField {
    pub field: PolyVectorField,
    /// e₁, e₂, e₃, v₁, v₂, v₃.
    pub idempotents: Vec<Vec<FieldElem>>,
    /// θ₁..θ₉ row-major per component.
    pub theta: Vec<FieldElem>,
    pub gamma: GammaSpec,
}

impl DistinguishedField {
    pub fn tower(&self) -> &Arc<FieldTower> {
        self.field.tower()
    }
}

/// Construct the unique distinguished quadratic field with idempotents
/// e₁, e₂, e₃ and the three prescribed vᵢ: per output coordinate k solve
/// the 3×3 system 2A·w = (vᵢ − Σⱼ γᵢⱼ² eⱼ)ₖ for the mixed values
/// w = (p̂(e₁,e₂), p̂(e₂,e₃), p̂(e₃,e₁))ₖ, then assemble
/// p(x) = Σ xᵢ² eᵢ + 2Σ_{i<j} xᵢxⱼ p̂(eᵢ,eⱼ). All six prescribed
/// idempotents are re-verified exactly before returning.
pub fn construct_distinguished(
    gamma: &GammaSpec,
) -> Result<DistinguishedField, DistinguishedError> {
    let tower = gamma.tower();
    let a = gamma.matrix_a();
    if a.det().is_zero() {
        return Err(DistinguishedError::SingularA);
    }
    let two = Rational::from_integer(2.into());
    let a2 = FieldMatrix::from_rows(
        a.rows()
            .iter()
            .map(|row| row.iter().map(|e| e.scale(&two)).collect())
            .collect(),
    );
    // w[k] = (u12_k, u23_k, u31_k)
    let mut mixed = Vec::with_capacity(3);
    for k in 0..3 {
        let rhs: Vec<FieldElem> = (0..3)
            .map(|i| {
                let gik = gamma.entry(i, k);
                gik.sub(&gik.mul(gik).expect("aligned")).expect("aligned")
            })
            .collect();
        let w = a2.solve(&rhs).ok_or(DistinguishedError::SingularA)?;
        mixed.push(w);
    }
    let mut theta = Vec::with_capacity(9);
    let mut components = Vec::with_capacity(3);
    for k in 0..3 {
        let t12 = mixed[k][0].scale(&two);
        let t23 = mixed[k][1].scale(&two);
        let t31 = mixed[k][2].scale(&two);
        let xk = MPoly::var(3, k, tower);
        let x1x2 = MPoly::var(3, 0, tower).mul(&MPoly::var(3, 1, tower));
        let x2x3 = MPoly::var(3, 1, tower).mul(&MPoly::var(3, 2, tower));
        let x3x1 = MPoly::var(3, 2, tower).mul(&MPoly::var(3, 0, tower));
        let comp = xk
            .pow(2)
            .add(&x1x2.mul_elem(&t12))
            .add(&x2x3.mul_elem(&t23))
            .add(&x3x1.mul_elem(&t31));
        components.push(comp);
        theta.push(t12);
        theta.push(t23);
        theta.push(t31);
    }
    let field = PolyVectorField::new(components)
        .map_err(|_| DistinguishedError::VerificationFailed("field assembly"))?;
    let mut idempotents = Vec::with_capacity(6);
    for i in 0..3 {
        let mut e = vec![FieldElem::zero(tower); 3];
        e[i] = FieldElem::one(tower);
        idempotents.push(e);
    }
    for i in 0..3 {
        idempotents.push(gamma.idempotent(i));
    }
    for v in &idempotents {
        if field.eval(v) != *v {
            return Err(DistinguishedError::VerificationFailed("prescribed idempotent"));
        }
    }
    Ok(DistinguishedField { field, idempotents, theta, gamma: gamma.clone() })
}
