//! The transformation constant C, the segment length r, the angle equation
//! for γ(s) in each case, its fixed-step solution and its closed forms.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::ode::rk4;
use crate::spaces::SpaceCase;

/// Parameters of one transformation, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BacklundParams {
    pub space: SpaceCase,
    pub phi: f64,
    pub tau0: f64,
    pub gamma0: f64,
    /// C = τ₀·tan(φ/2) or τ₀·tanh(φ/2).
    pub c: f64,
    /// Constant segment length, always positive.
    pub r: f64,
    pub grid: Grid,
}

impl BacklundParams {
    pub fn new(space: SpaceCase, tau0: f64, phi: f64, gamma0: f64, grid: Grid) -> Result<Self> {
        if !gamma0.is_finite() {
            return Err(Error::Config(format!("gamma0 must be finite, got {gamma0}")));
        }
        check_tau(tau0)?;
        let c = backlund_constant(space, tau0, phi)?;
        let r = radius(space, tau0, phi)?.r;
        Ok(BacklundParams { space, phi, tau0, gamma0, c, r, grid })
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau == 0.0 || !tau.is_finite() {
        return Err(Error::ZeroTorsion);
    }
    Ok(())
}

fn check_phi(space: SpaceCase, phi: f64) -> Result<()> {
    if !phi.is_finite() {
        return Err(Error::PhiOutOfDomain { reason: format!("phi = {phi} is not finite") });
    }
    if phi == 0.0 {
        return Err(Error::PhiOutOfDomain {
            reason: "the binormals must meet at a constant angle φ ≠ 0 (condition iii)".into(),
        });
    }
    if space.is_circular() && (phi / 2.0).cos().abs() < 1e-12 {
        return Err(Error::PhiOutOfDomain { reason: format!("φ = {phi} is a pole of tan(φ/2) (φ ≡ π mod 2π)") });
    }
    Ok(())
}

/// C = τ·tan(φ/2) (G3, G4) or τ·tanh(φ/2) (pseudo-Galilean cases).
pub fn backlund_constant(space: SpaceCase, tau: f64, phi: f64) -> Result<f64> {
    check_phi(space, phi)?;
    Ok(if space.is_circular() { tau * (phi / 2.0).tan() } else { tau * (phi / 2.0).tanh() })
}

/// Segment length in its three readings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Radius {
    /// Positive length: |sin φ/τ| or |sinh φ/τ|.
    pub r: f64,
    /// sin φ/τ (circular) or −sinh φ/τ (pseudo-Galilean), as the torsion relation reads.
    pub signed: f64,
    /// The rearranged half-angle form 2τt/(τ²(1+t²)) or 2τt/(τ²(t²−1)).
    pub half_angle_form: f64,
}

pub fn radius(space: SpaceCase, tau: f64, phi: f64) -> Result<Radius> {
    check_phi(space, phi)?;
    check_tau(tau)?;
    if space.is_circular() {
        if phi.sin().abs() < 1e-12 {
            return Err(Error::PhiOutOfDomain { reason: format!("sin φ = 0 at φ = {phi} gives zero length r") });
        }
        let t = (phi / 2.0).tan();
        let signed = phi.sin() / tau;
        Ok(Radius { r: signed.abs(), signed, half_angle_form: 2.0 * tau * t / (tau * tau * (1.0 + t * t)) })
    } else {
        let t = (phi / 2.0).tanh();
        let signed = -phi.sinh() / tau;
        Ok(Radius { r: signed.abs(), signed, half_angle_form: 2.0 * tau * t / (tau * tau * (t * t - 1.0)) })
    }
}

/// Right-hand side of the angle equation dγ/ds.
///
/// `kappa` only enters in G4.
pub fn gamma_rhs(space: SpaceCase, gamma: f64, tau: f64, phi: f64, kappa: f64) -> f64 {
    match space {
        SpaceCase::G3 => tau * gamma.sin() * (phi / 2.0).tan(),
        SpaceCase::Pg3Tb => tau * gamma.sin() * (phi / 2.0).tanh(),
        SpaceCase::Pg3Tn => -tau * gamma.sinh() * (phi / 2.0).tanh(),
        SpaceCase::G4 => tau * gamma.sin() * (phi / 2.0).tan() - kappa,
    }
}

/// γ on every grid sample, RK4 with the grid spacing as step.
///
/// γ is kept as a continuous real branch (never wrapped).
pub fn solve_gamma(params: &BacklundParams, kappa: Option<&(dyn Fn(f64) -> f64 + Sync)>) -> Result<Vec<f64>> {
    let BacklundParams { space, phi, tau0, gamma0, .. } = *params;
    check_phi(space, phi)?;
    check_tau(tau0)?;
    let kappa_at = |s: f64| kappa.map_or(0.0, |k| k(s));
    let states = rk4(&params.grid, [gamma0], |s, y| [gamma_rhs(space, y[0], tau0, phi, kappa_at(s))]);
    Ok(states.into_iter().map(|y| y[0]).collect())
}

/// Separable closed form of the angle equation (not available in G4).
pub fn gamma_closed_form(params: &BacklundParams, s: f64) -> Result<f64> {
    let BacklundParams { space, gamma0, c, .. } = *params;
    let ds = s - params.grid.s_min;
    match space {
        SpaceCase::G4 => Err(Error::NoClosedForm(space.to_string())),
        SpaceCase::G3 | SpaceCase::Pg3Tb => {
            // tan(γ/2) = tan(γ₀/2)·e^{C s}, continued onto γ₀'s branch
            let k = ((gamma0 + PI) / (2.0 * PI)).floor();
            let base = gamma0 - 2.0 * PI * k;
            if ds == 0.0 {
                return Ok(gamma0);
            }
            Ok(2.0 * ((base / 2.0).tan() * (c * ds).exp()).atan() + 2.0 * PI * k)
        }
        SpaceCase::Pg3Tn => {
            // tanh(γ/2) = tanh(γ₀/2)·e^{−C s}
            if ds == 0.0 {
                return Ok(gamma0);
            }
            let value = (gamma0 / 2.0).tanh() * (-c * ds).exp();
            if value.abs() >= 1.0 {
                return Err(Error::ArtanhDomain { value: value.abs() });
            }
            Ok(2.0 * value.atanh())
        }
    }
}
