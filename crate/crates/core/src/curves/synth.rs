use crate::curves::{temporal_vector, CurveData, FrenetData};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::ode::rk4;
use crate::spaces::{Frame, GVec, SpaceCase};
use crate::tabulated::ScalarFn;

/// Curve and frames produced by integrating a Frenet system.
#[derive(Clone, Debug)]
pub struct Synthesized {
    pub curve: CurveData,
    pub frenet: FrenetData,
    pub notes: Vec<String>,
}

/// Coefficient matrix `F` of the Frenet system `Eᵢ' = Σⱼ Fᵢⱼ Eⱼ`.
pub fn frenet_matrix(space: SpaceCase, kappa: f64, tau: f64, sigma: f64) -> [[f64; 4]; 4] {
    let mut f = [[0.0; 4]; 4];
    f[0][1] = kappa;
    f[1][2] = tau;
    match space {
        SpaceCase::G3 => f[2][1] = -tau,
        SpaceCase::Pg3Tb | SpaceCase::Pg3Tn => f[2][1] = tau,
        SpaceCase::G4 => {
            f[1][0] = -kappa;
            f[2][1] = -tau;
            f[3][2] = -sigma;
        }
    }
    f
}

/// Standard starting frame for each case.
///
/// G3 and the timelike-binormal case use the coordinate axes; the timelike-normal
/// case starts with E₂ = (0,0,1), E₃ = (0,−1,0). In G4 the time components
/// (1, 0, κ₀/τ₀) of E₁, E₂, E₃ span the kernel of the Frenet matrix, so E₁ keeps
/// its unit time component whenever κ/τ is constant.
pub fn default_initial_frame(space: SpaceCase, kappa0: f64, tau0: f64) -> Result<Frame> {
    match space {
        SpaceCase::G3 | SpaceCase::Pg3Tb => Ok(Frame::standard(3)),
        SpaceCase::Pg3Tn => {
            Frame::new(vec![GVec::new3(1.0, 0.0, 0.0), GVec::new3(0.0, 0.0, 1.0), GVec::new3(0.0, -1.0, 0.0)])
        }
        SpaceCase::G4 => {
            let t3 = if tau0 != 0.0 { kappa0 / tau0 } else { 0.0 };
            let e1 = GVec::new4(1.0, 0.0, 0.0, 1.0);
            let e2 = GVec::new4(0.0, 1.0, 0.0, 0.0);
            let e3 = GVec::new4(0.0, 0.0, 1.0, t3);
            let (e4, _) = temporal_vector(&e1, &e2, &e3)?;
            Frame::new(vec![e1, e2, e3, e4])
        }
    }
}

/// Integrates the case's Frenet system together with α' = E₁ (classical RK4,
/// one step per grid interval).
///
/// A missing σ in G4 is replaced by zero and noted.
pub fn synthesize_curve(
    space: SpaceCase,
    kappa: &ScalarFn,
    tau: &ScalarFn,
    sigma: Option<&ScalarFn>,
    initial: &Frame,
    alpha0: GVec,
    grid: &Grid,
) -> Result<Synthesized> {
    let dim = space.dim();
    if initial.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: initial.dim() });
    }
    if alpha0.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: alpha0.dim() });
    }
    let mut notes = Vec::new();
    let zero: ScalarFn = crate::tabulated::constant(0.0);
    let sigma_fn = match (space, sigma) {
        (SpaceCase::G4, None) => {
            notes.push("sigma not supplied: E4' = -sigma E3 integrated with sigma = 0".to_string());
            &zero
        }
        (_, Some(f)) => f,
        (_, None) => &zero,
    };
    let rhs_matrix = |s: f64| frenet_matrix(space, kappa(s), tau(s), sigma_fn(s));

    let states: Vec<Vec<f64>> = match dim {
        3 => integrate::<3, 12>(grid, initial, &alpha0, rhs_matrix),
        _ => integrate::<4, 20>(grid, initial, &alpha0, rhs_matrix),
    };

    let d = space.distinguished_index();
    let mut positions = Vec::with_capacity(states.len());
    let mut frames = Vec::with_capacity(states.len());
    for (i, y) in states.iter().enumerate() {
        let s = grid.s(i);
        let mut p = GVec::from_slice(&y[..dim])?;
        // the distinguished coordinate integrates E₁'s constant unit component;
        // snap away summation round-off, reject genuine drift
        if (p[d] - s).abs() > 1e-9 * s.abs().max(1.0) {
            return Err(Error::Inadmissible { index: i, s, found: p[d] });
        }
        p[d] = s;
        positions.push(p);
        let vectors =
            (0..dim).map(|k| GVec::from_slice(&y[dim * (k + 1)..dim * (k + 2)])).collect::<Result<Vec<_>>>()?;
        frames.push(Frame::new(vectors)?);
    }

    let points = grid.points();
    let epsilon = space.is_pseudo().then(|| {
        let e2 = initial.e(1);
        if e2[1] * e2[1] - e2[2] * e2[2] >= 0.0 {
            1
        } else {
            -1
        }
    });
    let mu = if space == SpaceCase::G4 {
        Some(temporal_vector(&initial.e(0), &initial.e(1), &initial.e(2))?.1)
    } else {
        None
    };
    let frenet = FrenetData {
        frames,
        kappa: points.iter().map(|&s| kappa(s)).collect(),
        tau: points.iter().map(|&s| tau(s)).collect(),
        epsilon,
        mu,
        sigma: (space == SpaceCase::G4).then(|| points.iter().map(|&s| sigma_fn(s)).collect()),
    };
    let curve = CurveData::new(space, *grid, positions)?;
    Ok(Synthesized { curve, frenet, notes })
}

fn integrate<const D: usize, const M: usize>(
    grid: &Grid,
    initial: &Frame,
    alpha0: &GVec,
    matrix: impl Fn(f64) -> [[f64; 4]; 4],
) -> Vec<Vec<f64>> {
    debug_assert_eq!(M, D + D * D);
    let mut y0 = [0.0; M];
    y0[..D].copy_from_slice(alpha0.as_slice());
    for k in 0..D {
        y0[D * (k + 1)..D * (k + 2)].copy_from_slice(initial.e(k).as_slice());
    }
    let states = rk4(grid, y0, |s, y| {
        let f = matrix(s);
        let mut dy = [0.0; M];
        // α' = E₁
        dy[..D].copy_from_slice(&y[D..2 * D]);
        for i in 0..D {
            for j in 0..D {
                let c = f[i][j];
                if c != 0.0 {
                    for k in 0..D {
                        dy[D * (i + 1) + k] += c * y[D * (j + 1) + k];
                    }
                }
            }
        }
        dy
    });
    states.into_iter().map(|y| y.to_vec()).collect()
}
