//! The transformation itself: rotation factors, the closed-form transformed
//! frames, the displacement formula and the predicted invariants of the image.

use crate::curves::{CurveData, FrenetData};
use crate::error::{Error, Result};
use crate::gamma::BacklundParams;
use crate::spaces::{Frame, SpaceCase};

/// Row-major 4×4 block; 3-space cases use the upper-left 3×3.
pub type Mat = [[f64; 4]; 4];

fn identity() -> Mat {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// The frame rotations the transformed frame is built from.
///
/// `gamma` maps (E₁,E₂,E₃[,E₄]) to (W₁,W₂,W₃[,W₄]) and equally the image frame to
/// (W₁,W̃₂,W̃₃[,W̃₄]); `phi` maps (W₁,W₂,W₃) to (W₁,W̃₂,W̃₃); `gamma_inverse` undoes
/// `gamma` on the image side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationFactors {
    pub gamma: Mat,
    pub phi: Mat,
    pub gamma_inverse: Mat,
}

impl RotationFactors {
    /// Γ⁻¹·Φ·Γ: row i holds the seed-frame coefficients of Ẽᵢ.
    pub fn composed(&self) -> Mat {
        mat_mul(&self.gamma_inverse, &mat_mul(&self.phi, &self.gamma))
    }
}

pub fn rotation_factors(space: SpaceCase, gamma: f64, phi: f64) -> RotationFactors {
    let mut g = identity();
    let mut gi = identity();
    let mut p = identity();
    match space {
        SpaceCase::Pg3Tn => {
            let (sh, ch) = (gamma.sinh(), gamma.cosh());
            g[0] = [ch, sh, 0.0, 0.0];
            g[1] = [sh, ch, 0.0, 0.0];
            gi[0] = [ch, -sh, 0.0, 0.0];
            gi[1] = [-sh, ch, 0.0, 0.0];
        }
        _ => {
            let (sn, cs) = gamma.sin_cos();
            g[0] = [cs, sn, 0.0, 0.0];
            g[1] = [-sn, cs, 0.0, 0.0];
            gi[0] = [cs, -sn, 0.0, 0.0];
            gi[1] = [sn, cs, 0.0, 0.0];
        }
    }
    match space {
        SpaceCase::G3 | SpaceCase::G4 => {
            let (sn, cs) = phi.sin_cos();
            p[1] = [0.0, cs, -sn, 0.0];
            p[2] = [0.0, sn, cs, 0.0];
        }
        SpaceCase::Pg3Tb => {
            let (sh, ch) = (phi.sinh(), phi.cosh());
            p[1] = [0.0, ch, sh, 0.0];
            p[2] = [0.0, sh, ch, 0.0];
        }
        SpaceCase::Pg3Tn => {
            let (sh, ch) = (phi.sinh(), phi.cosh());
            p[1] = [0.0, ch, sh, 0.0];
            p[2] = [0.0, -sh, ch, 0.0];
        }
    }
    RotationFactors { gamma: g, phi: p, gamma_inverse: gi }
}

/// Seed-frame coefficients of the transformed frame, evaluated term by term
/// from the closed forms (row i ↔ Ẽᵢ).
///
/// In the G3 set the hyperbolic cosh φ printed inside Ẽ₂ is read as cos φ.
pub fn frame_coefficients_closed_form(space: SpaceCase, gamma: f64, phi: f64) -> Mat {
    let mut m = identity();
    match space {
        SpaceCase::G3 | SpaceCase::G4 => {
            let (sg, cg) = gamma.sin_cos();
            let (sp, cp) = phi.sin_cos();
            m[0] = [cg * cg + sg * sg * cp, cg * sg * (1.0 - cp), sg * sp, 0.0];
            m[1] = [cg * sg * (1.0 - cp), sg * sg + cg * cg * cp, -cg * sp, 0.0];
            m[2] = [-sg * sp, sp * cg, cp, 0.0];
            // Ẽ₄ = E₄ in G4; unused row in 3-space
        }
        SpaceCase::Pg3Tb => {
            let (sg, cg) = gamma.sin_cos();
            let (sp, cp) = (phi.sinh(), phi.cosh());
            m[0] = [cg * cg + sg * sg * cp, cg * sg * (1.0 - cp), -sg * sp, 0.0];
            m[1] = [cg * sg * (1.0 - cp), sg * sg + cg * cg * cp, cg * sp, 0.0];
            m[2] = [-sg * sp, sp * cg, cp, 0.0];
        }
        SpaceCase::Pg3Tn => {
            let (sg, cg) = (gamma.sinh(), gamma.cosh());
            let (sp, cp) = (phi.sinh(), phi.cosh());
            m[0] = [cg * cg - sg * sg * cp, cg * sg * (1.0 - cp), -sg * sp, 0.0];
            m[1] = [cg * sg * (-1.0 + cp), -sg * sg + cg * cg * cp, cg * sp, 0.0];
            m[2] = [-sg * sp, -sp * cg, cp, 0.0];
        }
    }
    m
}

/// Frame of the image curve at one sample.
pub fn transformed_frame(space: SpaceCase, frame: &Frame, gamma: f64, phi: f64) -> Result<Frame> {
    if frame.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: frame.dim() });
    }
    Ok(frame.transform(&frame_coefficients_closed_form(space, gamma, phi)))
}

/// 2C/(τ² + C²) in the circular cases, 2C/(C² − τ²) in the pseudo-Galilean ones.
pub fn displacement_coefficient(space: SpaceCase, tau: f64, c: f64) -> f64 {
    if space.is_circular() {
        2.0 * c / (tau * tau + c * c)
    } else {
        2.0 * c / (c * c - tau * tau)
    }
}

/// (cos γ, sin γ), or (cosh γ, sinh γ) for the timelike-normal case.
pub fn displacement_direction(space: SpaceCase, gamma: f64) -> (f64, f64) {
    match space {
        SpaceCase::Pg3Tn => (gamma.cosh(), gamma.sinh()),
        _ => (gamma.cos(), gamma.sin()),
    }
}

/// Seed and image on a shared grid.
#[derive(Clone, Debug)]
pub struct TransformedPair {
    pub seed_curve: CurveData,
    pub seed_frenet: FrenetData,
    pub gamma: Vec<f64>,
    pub params: BacklundParams,
    pub image_curve: CurveData,
    /// From the closed-form frame set, not re-extracted from the image.
    pub image_frames: Vec<Frame>,
}

/// Seed torsion must match τ₀ to this.
pub const TORSION_CONSISTENCY: f64 = 1e-6;

pub fn transform_curve(
    seed_curve: &CurveData,
    seed_frenet: &FrenetData,
    gamma: &[f64],
    params: &BacklundParams,
) -> Result<TransformedPair> {
    let space = params.space;
    let n = seed_curve.grid().len();
    if seed_curve.space() != space {
        return Err(Error::CaseMismatch {
            space: space.to_string(),
            detail: format!("seed curve is a {} curve", seed_curve.space()),
        });
    }
    if !seed_curve.grid().matches(&params.grid) {
        return Err(Error::GridMismatch("seed grid differs from the parameter grid".into()));
    }
    if seed_frenet.len() != n || gamma.len() != n || seed_frenet.tau.len() != n {
        return Err(Error::GridMismatch(format!(
            "{n} seed samples, {} frames, {} gamma values",
            seed_frenet.len(),
            gamma.len()
        )));
    }
    for (i, t) in seed_frenet.tau.iter().enumerate() {
        let deviation = (t - params.tau0).abs();
        if !(deviation <= TORSION_CONSISTENCY) {
            return Err(Error::NonConstantTorsion { index: i, deviation });
        }
    }
    let rho = displacement_coefficient(space, params.tau0, params.c);
    let mut positions = Vec::with_capacity(n);
    let mut frames = Vec::with_capacity(n);
    for ((p, frame), &g) in seed_curve.positions().iter().zip(&seed_frenet.frames).zip(gamma) {
        let (a, b) = displacement_direction(space, g);
        positions.push(*p + rho * (a * frame.e(0) + b * frame.e(1)));
        frames.push(transformed_frame(space, frame, g, params.phi)?);
    }
    Ok(TransformedPair {
        seed_curve: seed_curve.clone(),
        seed_frenet: seed_frenet.clone(),
        gamma: gamma.to_vec(),
        params: *params,
        image_curve: CurveData::unchecked(space, *seed_curve.grid(), positions)?,
        image_frames: frames,
    })
}

/// Input curvature counts as matching the relation to this.
pub const CURVATURE_MATCH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurvaturePrediction {
    Predicted {
        kappa: f64,
        /// G3 only: whether the seed curvature obeys κ = −2 dγ/ds.
        input_matches: Option<bool>,
    },
    /// No curvature relation is stated for the pseudo-Galilean cases.
    Unspecified,
}

/// Image curvature κ̃: −2γ' (G3, equal to the seed's), −κ − 2γ' (G4).
pub fn predicted_curvature(space: SpaceCase, kappa: f64, dgamma_ds: f64) -> CurvaturePrediction {
    match space {
        SpaceCase::G3 => {
            let k = -2.0 * dgamma_ds;
            CurvaturePrediction::Predicted { kappa: k, input_matches: Some((kappa - k).abs() <= CURVATURE_MATCH_TOL) }
        }
        SpaceCase::G4 => CurvaturePrediction::Predicted { kappa: -kappa - 2.0 * dgamma_ds, input_matches: None },
        SpaceCase::Pg3Tb | SpaceCase::Pg3Tn => CurvaturePrediction::Unspecified,
    }
}

/// Image torsion τ̃: equal to τ except in the timelike-normal case, where τ̃ = −τ.
pub fn predicted_torsion(space: SpaceCase, tau: f64) -> f64 {
    match space {
        SpaceCase::Pg3Tn => -tau,
        _ => tau,
    }
}
