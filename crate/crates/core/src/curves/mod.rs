//! Admissible curves, their Frenet apparatus, curve synthesis from prescribed
//! curvature and torsion, and named test families.

mod families;
mod synth;

use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix4;

pub use families::{curve_family, FamilyCurve, FamilyParams, FAMILY_NAMES};
pub use synth::{default_initial_frame, frenet_matrix, synthesize_curve, Synthesized};

use crate::error::{Error, Result};
use crate::fd;
use crate::grid::Grid;
use crate::spaces::{Frame, GVec, SpaceCase};

/// Below this the trihedron is undefined.
pub const VANISHING_CURVATURE: f64 = 1e-9;
/// Tolerance on `distinguished component == s`.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Analytic position and derivatives: `f(s, order)` for orders 0..=3.
pub type CurveFn = Arc<dyn Fn(f64, usize) -> GVec + Send + Sync>;

#[derive(Clone)]
pub enum DerivativeSource {
    Analytic(CurveFn),
    FiniteDifference,
}

impl fmt::Debug for DerivativeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeSource::Analytic(_) => f.write_str("Analytic"),
            DerivativeSource::FiniteDifference => f.write_str("FiniteDifference"),
        }
    }
}

/// Position samples on a uniform arc-length grid.
#[derive(Clone, Debug)]
pub struct CurveData {
    space: SpaceCase,
    grid: Grid,
    positions: Vec<GVec>,
    derivatives: DerivativeSource,
}

impl CurveData {
    /// Tabulated admissible curve; derivatives by finite differences.
    pub fn new(space: SpaceCase, grid: Grid, positions: Vec<GVec>) -> Result<Self> {
        let curve = Self::unchecked(space, grid, positions)?;
        curve.check_admissible()?;
        Ok(curve)
    }

    /// Samples `f(s, 0)` on the grid and keeps `f` for exact derivatives.
    pub fn analytic(space: SpaceCase, grid: Grid, f: CurveFn) -> Result<Self> {
        let positions = grid.points().into_iter().map(|s| f(s, 0)).collect();
        let mut curve = Self::new(space, grid, positions)?;
        curve.derivatives = DerivativeSource::Analytic(f);
        Ok(curve)
    }

    /// Tabulated curve without the admissibility check (transformed images are
    /// generally not arc-length parametrized).
    pub fn unchecked(space: SpaceCase, grid: Grid, positions: Vec<GVec>) -> Result<Self> {
        if positions.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} positions for {} grid samples", positions.len(), grid.len())));
        }
        if let Some(p) = positions.iter().find(|p| p.dim() != space.dim()) {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: p.dim() });
        }
        Ok(CurveData { space, grid, positions, derivatives: DerivativeSource::FiniteDifference })
    }

    pub fn check_admissible(&self) -> Result<()> {
        let d = self.space.distinguished_index();
        for (i, p) in self.positions.iter().enumerate() {
            let s = self.grid.s(i);
            if !((p[d] - s).abs() <= ADMISSIBILITY_TOL * s.abs().max(1.0)) {
                return Err(Error::Inadmissible { index: i, s, found: p[d] });
            }
        }
        Ok(())
    }

    pub fn space(&self) -> SpaceCase {
        self.space
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn positions(&self) -> &[GVec] {
        &self.positions
    }

    pub fn derivative_source(&self) -> &DerivativeSource {
        &self.derivatives
    }

    /// Drops analytic callables so derivatives come from the samples.
    pub fn tabulated(mut self) -> Self {
        self.derivatives = DerivativeSource::FiniteDifference;
        self
    }

    /// Derivative of the given order (1..=3) at sample `i`.
    pub fn derivative(&self, i: usize, order: usize) -> GVec {
        match &self.derivatives {
            DerivativeSource::Analytic(f) => f(self.grid.s(i), order),
            DerivativeSource::FiniteDifference => {
                let n = self.space.dim();
                let h = self.grid.h();
                let mut out = GVec::zeros(n);
                let mut column = vec![0.0; self.positions.len()];
                for k in 0..n {
                    for (c, p) in column.iter_mut().zip(&self.positions) {
                        *c = p[k];
                    }
                    out[k] = fd::derivative(&column, h, i, order);
                }
                out
            }
        }
    }

    /// All three derivatives at every sample, columns differenced once.
    pub fn derivative_table(&self) -> Vec<[GVec; 3]> {
        match &self.derivatives {
            DerivativeSource::Analytic(f) => (0..self.grid.len())
                .map(|i| {
                    let s = self.grid.s(i);
                    [f(s, 1), f(s, 2), f(s, 3)]
                })
                .collect(),
            DerivativeSource::FiniteDifference => {
                let n = self.space.dim();
                let h = self.grid.h();
                let len = self.positions.len();
                let mut table = vec![[GVec::zeros(n); 3]; len];
                for k in 0..n {
                    let column: Vec<f64> = self.positions.iter().map(|p| p[k]).collect();
                    for (i, row) in table.iter_mut().enumerate() {
                        for order in 1..=3 {
                            row[order - 1][k] = fd::derivative(&column, h, i, order);
                        }
                    }
                }
                table
            }
        }
    }
}

/// Per-sample Frenet frames and invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct FrenetData {
    pub frames: Vec<Frame>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    /// ±1, pseudo-Galilean only.
    pub epsilon: Option<i32>,
    /// ±1, G4 only.
    pub mu: Option<i32>,
    /// G4 only; zero unless supplied.
    pub sigma: Option<Vec<f64>>,
}

impl FrenetData {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// Frenet apparatus of an admissible curve.
///
/// G3 uses κ = √(x''² + y''²) (the trihedron normalisation), G¹₃ uses
/// κ = √|x''² − y''²| with ε chosen so det(E₁,E₂,E₃) = +1, and G4 takes the
/// torsion from the spatial 3×3 determinant.
pub fn frenet_apparatus(curve: &CurveData) -> Result<FrenetData> {
    curve.check_admissible()?;
    let space = curve.space();
    let grid = curve.grid();
    if grid.len() < 5 && matches!(curve.derivative_source(), DerivativeSource::FiniteDifference) {
        return Err(Error::GridTooCoarse { n: grid.n, min: 4 });
    }
    let table = curve.derivative_table();
    let len = grid.len();
    let mut frames = Vec::with_capacity(len);
    let mut kappa = Vec::with_capacity(len);
    let mut tau = Vec::with_capacity(len);
    let mut epsilon = None;
    let mut mu = None;

    for (i, [d1, d2, d3]) in table.iter().enumerate() {
        let s = grid.s(i);
        match space {
            SpaceCase::G3 | SpaceCase::Pg3Tb | SpaceCase::Pg3Tn => {
                let (x1, y1) = (d1[1], d1[2]);
                let (x2, y2) = (d2[1], d2[2]);
                let (x3, y3) = (d3[1], d3[2]);
                let euclid = x2 * x2 + y2 * y2;
                let (k, e3, eps) = if space == SpaceCase::G3 {
                    let k = euclid.sqrt();
                    if k < VANISHING_CURVATURE {
                        return Err(Error::VanishingCurvature { index: i, s });
                    }
                    (k, GVec::new3(0.0, -y2 / k, x2 / k), None)
                } else {
                    let q = x2 * x2 - y2 * y2;
                    if q.abs() < VANISHING_CURVATURE {
                        return Err(if euclid >= VANISHING_CURVATURE {
                            Error::NullNormal { index: i, s }
                        } else {
                            Error::VanishingCurvature { index: i, s }
                        });
                    }
                    let k = q.abs().sqrt();
                    let eps = q.signum();
                    (k, GVec::new3(0.0, eps * y2 / k, eps * x2 / k), Some(eps as i32))
                };
                if let Some(eps) = eps {
                    match epsilon {
                        None => epsilon = Some(eps),
                        Some(prev) if prev != eps => return Err(Error::NullNormal { index: i, s }),
                        _ => {}
                    }
                }
                let e1 = GVec::new3(1.0, x1, y1);
                let e2 = GVec::new3(0.0, x2 / k, y2 / k);
                kappa.push(k);
                tau.push((x2 * y3 - y2 * x3) / (k * k));
                frames.push(Frame::new(vec![e1, e2, e3])?);
            }
            SpaceCase::G4 => {
                let sp = |v: &GVec| [v[0], v[1], v[2]];
                let (a1, a2, a3) = (sp(d1), sp(d2), sp(d3));
                let k = dot3(&a2, &a2).sqrt();
                if k < VANISHING_CURVATURE {
                    return Err(Error::VanishingCurvature { index: i, s });
                }
                let t = det3(&a1, &a2, &a3) / (k * k);
                if t.abs() < VANISHING_CURVATURE {
                    return Err(Error::VanishingTorsion { index: i, s });
                }
                let e1 = GVec::new4(a1[0], a1[1], a1[2], 1.0);
                let e2 = GVec::new4(a2[0] / k, a2[1] / k, a2[2] / k, 0.0);
                // E₂' = α'''/κ − α''κ'/κ², κ' = (α''·α''')/κ
                let dk = dot3(&a2, &a3) / k;
                let de2 = GVec::new4(
                    a3[0] / k - a2[0] * dk / (k * k),
                    a3[1] / k - a2[1] * dk / (k * k),
                    a3[2] / k - a2[2] * dk / (k * k),
                    0.0,
                );
                // from E₂' = −κE₁ + τE₃
                let e3 = (1.0 / t) * (de2 + k * e1);
                let (e4, m) = temporal_vector(&e1, &e2, &e3)?;
                mu.get_or_insert(m);
                kappa.push(k);
                tau.push(t);
                frames.push(Frame::new(vec![e1, e2, e3, e4])?);
            }
        }
    }
    let sigma = (space == SpaceCase::G4).then(|| vec![0.0; len]);
    Ok(FrenetData { frames, kappa, tau, epsilon, mu, sigma })
}

/// Temporal vector E₄ = μ·(E₁ ∧ E₂ ∧ E₃) in G4, with μ = ±1 making
/// det(E₁,E₂,E₃,E₄) positive. Returns E₄ and μ.
pub fn temporal_vector(e1: &GVec, e2: &GVec, e3: &GVec) -> Result<(GVec, i32)> {
    for v in [e1, e2, e3] {
        if v.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: v.dim() });
        }
    }
    // cofactor expansion along a placeholder first row: det(X, E₁, E₂, E₃) = X·w
    let rows = [e1.as_slice(), e2.as_slice(), e3.as_slice()];
    let mut w = GVec::zeros(4);
    for j in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
        let minor = |r: usize, c: usize| rows[r][cols[c]];
        let m = minor(0, 0) * (minor(1, 1) * minor(2, 2) - minor(1, 2) * minor(2, 1))
            - minor(0, 1) * (minor(1, 0) * minor(2, 2) - minor(1, 2) * minor(2, 0))
            + minor(0, 2) * (minor(1, 0) * minor(2, 1) - minor(1, 1) * minor(2, 0));
        w[j] = if j % 2 == 0 { m } else { -m };
    }
    let det = Matrix4::from_columns(&[to_na(e1), to_na(e2), to_na(e3), to_na(&w)]).determinant();
    const THRESHOLD: f64 = 1e-12;
    if det.abs() < THRESHOLD {
        return Err(Error::LinearlyDependent { det, threshold: THRESHOLD });
    }
    let mu = if det > 0.0 { 1 } else { -1 };
    Ok((mu as f64 * w, mu))
}

fn to_na(v: &GVec) -> nalgebra::Vector4<f64> {
    nalgebra::Vector4::new(v[0], v[1], v[2], v[3])
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn det3(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}
