//! Degenerate scalar products of the Galilean spaces G3, G4 and the
//! pseudo-Galilean space G¹₃, plus the auxiliary Euclidean product used for
//! bookkeeping (frame coefficients, residual norms).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four geometry settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceCase {
    #[serde(rename = "g3")]
    G3,
    /// Pseudo-Galilean space, timelike binormal.
    #[serde(rename = "pg3-tb")]
    Pg3Tb,
    /// Pseudo-Galilean space, timelike normal.
    #[serde(rename = "pg3-tn")]
    Pg3Tn,
    #[serde(rename = "g4")]
    G4,
}

impl SpaceCase {
    pub const ALL: [SpaceCase; 4] = [SpaceCase::G3, SpaceCase::Pg3Tb, SpaceCase::Pg3Tn, SpaceCase::G4];

    pub fn dim(self) -> usize {
        match self {
            SpaceCase::G4 => 4,
            _ => 3,
        }
    }

    /// Index of the absolute (time) coordinate: a₁ in 3-space, a₄ in G4.
    pub fn distinguished_index(self) -> usize {
        match self {
            SpaceCase::G4 => 3,
            _ => 0,
        }
    }

    pub fn is_pseudo(self) -> bool {
        matches!(self, SpaceCase::Pg3Tb | SpaceCase::Pg3Tn)
    }

    /// Circular (tan/sin) versus hyperbolic (tanh/sinh) parameter functions.
    pub fn is_circular(self) -> bool {
        !self.is_pseudo()
    }

    pub fn label(self) -> &'static str {
        match self {
            SpaceCase::G3 => "g3",
            SpaceCase::Pg3Tb => "pg3-tb",
            SpaceCase::Pg3Tn => "pg3-tn",
            SpaceCase::G4 => "g4",
        }
    }
}

impl fmt::Display for SpaceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SpaceCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g3" => Ok(SpaceCase::G3),
            "pg3-tb" | "pg3tb" => Ok(SpaceCase::Pg3Tb),
            "pg3-tn" | "pg3tn" => Ok(SpaceCase::Pg3Tn),
            "g4" => Ok(SpaceCase::G4),
            other => Err(Error::Config(format!("unknown case '{other}' (expected one of g3, pg3-tb, pg3-tn, g4)"))),
        }
    }
}

/// A vector of 3 or 4 real components.
#[derive(Clone, Copy, PartialEq)]
pub struct GVec {
    comps: [f64; 4],
    dim: usize,
}

impl GVec {
    pub fn new3(a1: f64, a2: f64, a3: f64) -> Self {
        GVec { comps: [a1, a2, a3, 0.0], dim: 3 }
    }

    pub fn new4(a1: f64, a2: f64, a3: f64, a4: f64) -> Self {
        GVec { comps: [a1, a2, a3, a4], dim: 4 }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 3 || dim == 4, "GVec dimension must be 3 or 4");
        GVec { comps: [0.0; 4], dim }
    }

    /// Unit vector along axis `i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = GVec::zeros(dim);
        v.comps[i] = 1.0;
        v
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match values.len() {
            3 => Ok(GVec::new3(values[0], values[1], values[2])),
            4 => Ok(GVec::new4(values[0], values[1], values[2], values[3])),
            n => Err(Error::DimensionMismatch { expected: 3, found: n }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.comps[..self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.as_slice().iter().copied()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(f64::is_finite)
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.dim });
        }
        Ok(())
    }
}

impl fmt::Debug for GVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Index<usize> for GVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for GVec {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        &mut self.comps[i]
    }
}

impl Add for GVec {
    type Output = GVec;
    fn add(mut self, rhs: GVec) -> GVec {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..4 {
            self.comps[i] += rhs.comps[i];
        }
        self
    }
}

impl Sub for GVec {
    type Output = GVec;
    fn sub(mut self, rhs: GVec) -> GVec {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..4 {
            self.comps[i] -= rhs.comps[i];
        }
        self
    }
}

impl Mul<GVec> for f64 {
    type Output = GVec;
    fn mul(self, mut rhs: GVec) -> GVec {
        for c in rhs.comps.iter_mut() {
            *c *= self;
        }
        rhs
    }
}

impl Neg for GVec {
    type Output = GVec;
    fn neg(self) -> GVec {
        -1.0 * self
    }
}

/// Ordered frame E₁, E₂, E₃[, E₄].
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    vectors: Vec<GVec>,
}

impl Frame {
    pub fn new(vectors: Vec<GVec>) -> Result<Self> {
        let n = vectors.len();
        if n != 3 && n != 4 {
            return Err(Error::DimensionMismatch { expected: 3, found: n });
        }
        for v in &vectors {
            v.check_dim(n)?;
        }
        Ok(Frame { vectors })
    }

    /// E₁..E_n equal to the coordinate axes.
    pub fn standard(dim: usize) -> Self {
        Frame { vectors: (0..dim).map(|i| GVec::basis(dim, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[GVec] {
        &self.vectors
    }

    /// `E_{i+1}` (0-based).
    pub fn e(&self, i: usize) -> GVec {
        self.vectors[i]
    }

    /// Σ cᵢ·Eᵢ.
    pub fn combine(&self, coeffs: &[f64]) -> GVec {
        debug_assert_eq!(coeffs.len(), self.dim());
        self.vectors.iter().zip(coeffs).fold(GVec::zeros(self.dim()), |acc, (v, c)| acc + *c * *v)
    }

    /// Frame whose i-th vector is Σⱼ m[i][j]·Eⱼ.
    pub fn transform(&self, m: &[[f64; 4]; 4]) -> Frame {
        let n = self.dim();
        let vectors = (0..n).map(|i| self.combine(&m[i][..n])).collect();
        Frame { vectors }
    }
}

/// Causal character of an isotropic vector in G¹₃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Causal {
    Spacelike,
    Timelike,
    Null,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    NonIsotropic,
    /// Causal character is only defined in the pseudo-Galilean space.
    Isotropic(Option<Causal>),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::NonIsotropic => f.write_str("non-isotropic"),
            Classification::Isotropic(None) => f.write_str("isotropic"),
            Classification::Isotropic(Some(Causal::Spacelike)) => f.write_str("isotropic, spacelike"),
            Classification::Isotropic(Some(Causal::Timelike)) => f.write_str("isotropic, timelike"),
            Classification::Isotropic(Some(Causal::Null)) => f.write_str("isotropic, null"),
        }
    }
}

/// Galilean / pseudo-Galilean scalar product.
///
/// The branch test on the distinguished component is an exact comparison with
/// zero, as in the definition.
pub fn g_dot(space: SpaceCase, u: &GVec, v: &GVec) -> Result<f64> {
    let n = space.dim();
    u.check_dim(n)?;
    v.check_dim(n)?;
    let d = space.distinguished_index();
    if u[d] != 0.0 || v[d] != 0.0 {
        return Ok(u[d] * v[d]);
    }
    Ok(match space {
        SpaceCase::G3 => u[1] * v[1] + u[2] * v[2],
        SpaceCase::Pg3Tb | SpaceCase::Pg3Tn => u[1] * v[1] - u[2] * v[2],
        SpaceCase::G4 => u[0] * v[0] + u[1] * v[1] + u[2] * v[2],
    })
}

/// √|⟨u,u⟩|.
pub fn g_norm(space: SpaceCase, u: &GVec) -> Result<f64> {
    Ok(g_dot(space, u, u)?.abs().sqrt())
}

pub fn classify(space: SpaceCase, u: &GVec) -> Result<Classification> {
    u.check_dim(space.dim())?;
    if u[space.distinguished_index()] != 0.0 {
        return Ok(Classification::NonIsotropic);
    }
    if !space.is_pseudo() {
        return Ok(Classification::Isotropic(None));
    }
    let q = u[1] * u[1] - u[2] * u[2];
    let causal = if q > 0.0 {
        Causal::Spacelike
    } else if q < 0.0 {
        Causal::Timelike
    } else {
        Causal::Null
    };
    Ok(Classification::Isotropic(Some(causal)))
}

/// Auxiliary Euclidean product (bookkeeping only, not a Galilean invariant).
pub fn euclid_dot(u: &GVec, v: &GVec) -> Result<f64> {
    u.check_dim(v.dim())?;
    Ok(u.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
}

/// Auxiliary Euclidean norm.
pub fn euclid_norm(u: &GVec) -> f64 {
    u.iter().map(|a| a * a).sum::<f64>().sqrt()
}
