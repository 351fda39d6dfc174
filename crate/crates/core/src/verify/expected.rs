//! Closed-form expected residuals, in seed-frame coefficients.
//!
//! Obtained by expanding the displacement formula and the transformed frame
//! set with the seed Frenet system and the angle equation. Entries the stated
//! identities would make zero are nonzero whenever κ ≠ 0; the G¹₃-TN
//! entries are nonzero even on κ ≡ 0 because its angle equation and the
//! torsion relation τ̃ = −τ disagree with the hyperbolic frame set.

use crate::spaces::SpaceCase;

/// Coefficients of α̃ − α: ρ(cos γ, sin γ, 0, 0) or ρ(cosh γ, sinh γ, 0, 0).
pub fn displacement(space: SpaceCase, gamma: f64, rho: f64) -> [f64; 4] {
    match space {
        SpaceCase::Pg3Tn => [rho * gamma.cosh(), rho * gamma.sinh(), 0.0, 0.0],
        _ => [rho * gamma.cos(), rho * gamma.sin(), 0.0, 0.0],
    }
}

/// dα̃/ds − Ẽ₁.
pub fn tangent_mismatch(space: SpaceCase, gamma: f64, kappa: f64, phi: f64, rho: f64) -> [f64; 4] {
    match space {
        SpaceCase::G3 | SpaceCase::Pg3Tb => [0.0, rho * kappa * gamma.cos(), 0.0, 0.0],
        SpaceCase::Pg3Tn => {
            let (sh, ch) = (gamma.sinh(), gamma.cosh());
            let cp1 = phi.cosh() - 1.0;
            [2.0 * sh * sh * cp1, rho * kappa * ch + 2.0 * sh * ch * cp1, 0.0, 0.0]
        }
        // the −κ term of the angle equation absorbs the mismatch
        SpaceCase::G4 => [0.0; 4],
    }
}

/// 1 − (E₁ coefficient of dα̃/ds).
pub fn speed_deficit(space: SpaceCase, gamma: f64, phi: f64) -> f64 {
    match space {
        SpaceCase::G3 | SpaceCase::G4 => gamma.sin().powi(2) * (1.0 - phi.cos()),
        SpaceCase::Pg3Tb => -gamma.sin().powi(2) * (phi.cosh() - 1.0),
        SpaceCase::Pg3Tn => -gamma.sinh().powi(2) * (phi.cosh() - 1.0),
    }
}

/// dẼ₃/ds minus the binormal equation's right-hand side for the image with
/// the predicted torsion (−τ̃Ẽ₂ in G³/G⁴, +τ̃Ẽ₂ in G¹₃).
pub fn binormal_residual(space: SpaceCase, gamma: f64, kappa: f64, tau: f64, phi: f64) -> [f64; 4] {
    match space {
        SpaceCase::G3 => [0.0, -kappa * gamma.sin() * phi.sin(), 0.0, 0.0],
        SpaceCase::Pg3Tb => [0.0, -kappa * gamma.sin() * phi.sinh(), 0.0, 0.0],
        SpaceCase::Pg3Tn => {
            let (sh, ch) = (gamma.sinh(), gamma.cosh());
            let cp = phi.cosh();
            [
                2.0 * tau * (cp - 1.0) * sh * ch,
                -kappa * sh * phi.sinh() + tau * ((cp - 1.0) * (ch * ch + sh * sh) + 1.0 + cp),
                0.0,
                0.0,
            ]
        }
        SpaceCase::G4 => [0.0; 4],
    }
}
