use std::sync::Arc;

use crate::curves::{default_initial_frame, synthesize_curve, CurveData, CurveFn, FrenetData};
use crate::error::{Error, Result};
use crate::gamma::{gamma_rhs, solve_gamma, BacklundParams};
use crate::grid::Grid;
use crate::spaces::{GVec, SpaceCase};
use crate::tabulated::{constant, ScalarFn, Tabulated};

pub const FAMILY_NAMES: [&str; 7] =
    ["line", "g3-parabola", "g3-circular", "pg3-hyperbolic", "pg3-timelike", "g4-helix", "backlund-consistent"];

/// Parameters shared by the named families; each family reads what it needs.
#[derive(Clone, Copy, Debug)]
pub struct FamilyParams {
    pub space: SpaceCase,
    pub grid: Grid,
    /// Seed torsion (backlund-consistent; frame torsion of the line).
    pub tau: f64,
    pub phi: f64,
    pub gamma0: f64,
    /// Constant G4 seed curvature for backlund-consistent.
    pub kappa: f64,
    /// Line (s, a·s + b, c·s + d).
    pub line: [f64; 4],
}

impl FamilyParams {
    pub fn new(space: SpaceCase, grid: Grid) -> Self {
        FamilyParams { space, grid, tau: 0.0, phi: 0.0, gamma0: 0.0, kappa: 1.0, line: [0.0; 4] }
    }
}

/// A fixture curve. Synthesized families also carry their integrated frames.
#[derive(Clone, Debug)]
pub struct FamilyCurve {
    pub curve: CurveData,
    pub frenet: Option<FrenetData>,
    /// Solved angle, backlund-consistent only.
    pub gamma: Option<Vec<f64>>,
    pub notes: Vec<String>,
}

pub fn curve_family(name: &str, p: &FamilyParams) -> Result<FamilyCurve> {
    let analytic = |space: SpaceCase, f: CurveFn| -> Result<FamilyCurve> {
        if space != p.space && !(space.is_pseudo() && p.space.is_pseudo()) {
            return Err(Error::CaseMismatch {
                space: p.space.to_string(),
                detail: format!("family '{name}' lives in {space}"),
            });
        }
        Ok(FamilyCurve {
            curve: CurveData::analytic(p.space, p.grid, f)?,
            frenet: None,
            gamma: None,
            notes: Vec::new(),
        })
    };
    match name {
        "line" => line(p),
        "g3-parabola" => analytic(
            SpaceCase::G3,
            Arc::new(|s, k| match k {
                0 => GVec::new3(s, s * s / 2.0, 0.0),
                1 => GVec::new3(1.0, s, 0.0),
                2 => GVec::new3(0.0, 1.0, 0.0),
                _ => GVec::zeros(3),
            }),
        ),
        "g3-circular" => analytic(
            SpaceCase::G3,
            Arc::new(|s, k| {
                let (sn, cs) = s.sin_cos();
                match k {
                    0 => GVec::new3(s, cs, sn),
                    1 => GVec::new3(1.0, -sn, cs),
                    2 => GVec::new3(0.0, -cs, -sn),
                    _ => GVec::new3(0.0, sn, -cs),
                }
            }),
        ),
        "pg3-hyperbolic" => analytic(
            SpaceCase::Pg3Tb,
            Arc::new(|s, k| {
                let (sh, ch) = (s.sinh(), s.cosh());
                match k {
                    0 => GVec::new3(s, ch, sh),
                    1 | 3 => GVec::new3(if k == 1 { 1.0 } else { 0.0 }, sh, ch),
                    _ => GVec::new3(0.0, ch, sh),
                }
            }),
        ),
        // timelike principal normal: x''² − y''² = −1
        "pg3-timelike" => analytic(
            SpaceCase::Pg3Tn,
            Arc::new(|s, k| {
                let (sh, ch) = (s.sinh(), s.cosh());
                match k {
                    0 => GVec::new3(s, sh, ch),
                    1 | 3 => GVec::new3(if k == 1 { 1.0 } else { 0.0 }, ch, sh),
                    _ => GVec::new3(0.0, sh, ch),
                }
            }),
        ),
        "g4-helix" => analytic(
            SpaceCase::G4,
            Arc::new(|s, k| {
                let (sn, cs) = s.sin_cos();
                match k {
                    0 => GVec::new4(cs, sn, s, s),
                    1 => GVec::new4(-sn, cs, 1.0, 1.0),
                    2 => GVec::new4(-cs, -sn, 0.0, 0.0),
                    _ => GVec::new4(sn, -cs, 0.0, 0.0),
                }
            }),
        ),
        "backlund-consistent" => backlund_consistent(p),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

fn line(p: &FamilyParams) -> Result<FamilyCurve> {
    let [a, b, c, d] = p.line;
    let f: CurveFn = if p.space == SpaceCase::G4 {
        Arc::new(move |s, k| match k {
            0 => GVec::new4(a * s + b, c * s + d, 0.0, s),
            1 => GVec::new4(a, c, 0.0, 1.0),
            _ => GVec::zeros(4),
        })
    } else {
        Arc::new(move |s, k| match k {
            0 => GVec::new3(s, a * s + b, c * s + d),
            1 => GVec::new3(1.0, a, c),
            _ => GVec::zeros(3),
        })
    };
    let curve = CurveData::analytic(p.space, p.grid, f.clone())?;
    // κ = 0 leaves the trihedron undetermined; attach the frame obtained by
    // integrating the Frenet system from a frame whose tangent is the line's
    let mut initial = default_initial_frame(p.space, 0.0, p.tau)?;
    let mut vectors = initial.vectors().to_vec();
    vectors[0] = f(p.grid.s_min, 1);
    if p.space == SpaceCase::G4 {
        let (e4, _) = crate::curves::temporal_vector(&vectors[0], &vectors[1], &vectors[2])?;
        vectors[3] = e4;
    }
    initial = crate::spaces::Frame::new(vectors)?;
    let synth =
        synthesize_curve(p.space, &constant(0.0), &constant(p.tau), None, &initial, f(p.grid.s_min, 0), &p.grid)?;
    let mut notes = synth.notes;
    notes.push("line: kappa = 0, trihedron undefined; frames integrated from an initial frame along the line".into());
    Ok(FamilyCurve { curve, frenet: Some(synth.frenet), gamma: None, notes })
}

/// Seed realizing the curvature relation κ = −2 dγ/ds (G3; adopted by analogy
/// in G¹₃) or carrying a user constant κ (G4), synthesized after solving γ.
fn backlund_consistent(p: &FamilyParams) -> Result<FamilyCurve> {
    let space = p.space;
    let params = BacklundParams::new(space, p.tau, p.phi, p.gamma0, p.grid)?;
    let mut notes = Vec::new();
    let (kappa_fn, gamma): (ScalarFn, Vec<f64>) = if space == SpaceCase::G4 {
        let k = p.kappa;
        let gamma = solve_gamma(&params, Some(&move |_| k))?;
        (constant(k), gamma)
    } else {
        let gamma = solve_gamma(&params, None)?;
        let tab = Tabulated::new(p.grid, gamma.clone());
        let (tau, phi) = (p.tau, p.phi);
        let kappa: ScalarFn = Arc::new(move |s| -2.0 * gamma_rhs(space, tab.eval(s), tau, phi, 0.0));
        if space.is_pseudo() {
            notes.push(
                "pseudo-Galilean seed: kappa = -2 dgamma/ds adopted by analogy with G3 (no curvature relation is stated)"
                    .into(),
            );
        }
        (kappa, gamma)
    };
    if space != SpaceCase::G4 && gamma.iter().all(|g| gamma_rhs(space, *g, p.tau, p.phi, 0.0) == 0.0) {
        notes.push(format!("gamma0 = {} is a fixed point: kappa = 0, degenerate seed (line)", p.gamma0));
    }
    let initial = default_initial_frame(space, kappa_fn(p.grid.s_min), p.tau)?;
    let mut alpha0 = GVec::zeros(space.dim());
    alpha0[space.distinguished_index()] = p.grid.s_min;
    let synth = synthesize_curve(space, &kappa_fn, &constant(p.tau), None, &initial, alpha0, &p.grid)?;
    notes.extend(synth.notes);
    Ok(FamilyCurve { curve: synth.curve, frenet: Some(synth.frenet), gamma: Some(gamma), notes })
}
