//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's formulas; matrices and equations are rebuilt from their
//! definitions.
#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use galbacklund::SpaceCase;

/// Forward-mode dual number: value and derivative along s.
#[derive(Clone, Copy, Debug)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Dual { v, d }
    }
    pub fn c(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
    pub fn sin(self) -> Self {
        Dual::new(self.v.sin(), self.d * self.v.cos())
    }
    pub fn cos(self) -> Self {
        Dual::new(self.v.cos(), -self.d * self.v.sin())
    }
    pub fn sinh(self) -> Self {
        Dual::new(self.v.sinh(), self.d * self.v.cosh())
    }
    pub fn cosh(self) -> Self {
        Dual::new(self.v.cosh(), self.d * self.v.sinh())
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.v - o.v, self.d - o.d)
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}

pub type M4 = [[f64; 4]; 4];
type DM = [[Dual; 4]; 4];

fn dzero() -> DM {
    [[Dual::c(0.0); 4]; 4]
}

fn deye() -> DM {
    let mut m = dzero();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Dual::c(1.0);
    }
    m
}

fn dmul(a: &DM, b: &DM) -> DM {
    let mut out = dzero();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Dual::c(0.0);
            for k in 0..4 {
                acc = acc + a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// γ-rotation of the (E₁,E₂) plane.
fn gamma_map(space: SpaceCase, g: Dual) -> DM {
    let mut m = deye();
    let (s, c) = if space == SpaceCase::Pg3Tn { (g.sinh(), g.cosh()) } else { (g.sin(), g.cos()) };
    if space == SpaceCase::Pg3Tn {
        m[0][0] = c;
        m[0][1] = s;
        m[1][0] = s;
        m[1][1] = c;
    } else {
        m[0][0] = c;
        m[0][1] = s;
        m[1][0] = -s;
        m[1][1] = c;
    }
    m
}

/// φ-rotation of the (W₂,W₃) plane.
fn phi_map(space: SpaceCase, phi: f64) -> DM {
    let mut m = deye();
    let p = Dual::c(phi);
    match space {
        SpaceCase::G3 | SpaceCase::G4 => {
            m[1][1] = p.cos();
            m[1][2] = -p.sin();
            m[2][1] = p.sin();
            m[2][2] = p.cos();
        }
        SpaceCase::Pg3Tb => {
            m[1][1] = p.cosh();
            m[1][2] = p.sinh();
            m[2][1] = p.sinh();
            m[2][2] = p.cosh();
        }
        SpaceCase::Pg3Tn => {
            m[1][1] = p.cosh();
            m[1][2] = p.sinh();
            m[2][1] = -p.sinh();
            m[2][2] = p.cosh();
        }
    }
    m
}

/// Γ(−γ)·Φ·Γ(γ) with derivatives; row i gives the seed coefficients of Ẽᵢ.
fn composed(space: SpaceCase, g: Dual, phi: f64) -> DM {
    dmul(&gamma_map(space, -g), &dmul(&phi_map(space, phi), &gamma_map(space, g)))
}

/// The composition's values only.
pub fn composition(space: SpaceCase, gamma: f64, phi: f64) -> M4 {
    let m = composed(space, Dual::c(gamma), phi);
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[i][j].v;
        }
    }
    out
}

/// Frenet system matrix F with dEⱼ/ds = Σₖ Fⱼₖ Eₖ (σ = 0).
pub fn frenet(space: SpaceCase, kappa: f64, tau: f64) -> M4 {
    let mut f = [[0.0; 4]; 4];
    f[0][1] = kappa;
    f[1][2] = tau;
    match space {
        SpaceCase::G3 => f[2][1] = -tau,
        SpaceCase::Pg3Tb | SpaceCase::Pg3Tn => f[2][1] = tau,
        SpaceCase::G4 => {
            f[1][0] = -kappa;
            f[2][1] = -tau;
        }
    }
    f
}

pub fn gamma_prime(space: SpaceCase, gamma: f64, kappa: f64, tau: f64, phi: f64) -> f64 {
    match space {
        SpaceCase::G3 => tau * gamma.sin() * (phi / 2.0).tan(),
        SpaceCase::Pg3Tb => tau * gamma.sin() * (phi / 2.0).tanh(),
        SpaceCase::Pg3Tn => -tau * gamma.sinh() * (phi / 2.0).tanh(),
        SpaceCase::G4 => tau * gamma.sin() * (phi / 2.0).tan() - kappa,
    }
}

/// Signed displacement coefficient from its half-angle form.
pub fn rho(space: SpaceCase, tau: f64, phi: f64) -> f64 {
    match space {
        SpaceCase::G3 | SpaceCase::G4 => {
            let c = tau * (phi / 2.0).tan();
            2.0 * c / (tau * tau + c * c)
        }
        _ => {
            let c = tau * (phi / 2.0).tanh();
            2.0 * c / (c * c - tau * tau)
        }
    }
}

/// Expected residuals at one sample, all in seed-frame coefficients.
#[derive(Clone, Copy, Debug)]
pub struct Expected {
    pub displacement: [f64; 4],
    pub mismatch: [f64; 4],
    pub speed_deficit: f64,
    pub r3: [f64; 4],
}

/// Differentiates the displacement formula and the transformed binormal
/// along the seed using the Frenet system and the angle equation.
pub fn expected(space: SpaceCase, gamma: f64, kappa: f64, tau: f64, phi: f64) -> Expected {
    let f = frenet(space, kappa, tau);
    let g = Dual::new(gamma, gamma_prime(space, gamma, kappa, tau, phi));
    let r = rho(space, tau, phi);
    // d/ds of Σ aⱼEⱼ in coefficients: aₖ' + Σⱼ aⱼFⱼₖ
    let deriv = |a: &[Dual; 4]| -> [f64; 4] {
        let mut out = [0.0; 4];
        for k in 0..4 {
            out[k] = a[k].d + (0..4).map(|j| a[j].v * f[j][k]).sum::<f64>();
        }
        out
    };
    let (cg, sg) = if space == SpaceCase::Pg3Tn { (g.cosh(), g.sinh()) } else { (g.cos(), g.sin()) };
    let disp = [Dual::c(r) * cg, Dual::c(r) * sg, Dual::c(0.0), Dual::c(0.0)];
    let mut velocity = deriv(&disp);
    velocity[0] += 1.0;
    let m = composed(space, g, phi);
    let mut mismatch = [0.0; 4];
    for k in 0..4 {
        mismatch[k] = velocity[k] - m[0][k].v;
    }
    let image_tau = if space == SpaceCase::Pg3Tn { -tau } else { tau };
    let sign = if space.is_pseudo() { 1.0 } else { -1.0 };
    let de3 = deriv(&m[2]);
    let mut r3 = [0.0; 4];
    for k in 0..4 {
        r3[k] = de3[k] - sign * image_tau * m[1][k].v;
    }
    Expected { displacement: [disp[0].v, disp[1].v, 0.0, 0.0], mismatch, speed_deficit: 1.0 - velocity[0], r3 }
}

/// Solves Σ cᵢEᵢ = v by Cramer's rule (columns are the frame vectors).
pub fn cramer(frame: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let det = |cols: &[Vec<f64>]| -> f64 {
        let m: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect();
        det_n(&m)
    };
    let d = det(frame);
    (0..n)
        .map(|i| {
            let mut cols = frame.to_vec();
            cols[i] = v.to_vec();
            det(&cols) / d
        })
        .collect()
}

fn det_n(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * det_n(&minor)
        })
        .sum()
}
