//! Residual audit of transformed pairs.
//!
//! Every gating check compares an observed residual against a closed-form
//! expectation sample by sample; it passes iff the largest pointwise
//! deviation is within tolerance. Residual norms use the auxiliary Euclidean
//! product, since the degenerate product does not measure isotropic error.

pub mod expected;

use std::collections::BTreeMap;
use std::ops::Range;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::backlund::{
    displacement_coefficient, predicted_curvature, predicted_torsion, CurvaturePrediction, TransformedPair,
};
use crate::curves::{CurveData, VANISHING_CURVATURE};
use crate::error::{Error, Result};
use crate::fd;
use crate::gamma::{gamma_rhs, radius};
use crate::spaces::{classify, g_norm, Causal, Classification, Frame, GVec, SpaceCase};

/// Frames with |det| below this are rejected.
pub const DEGENERATE_DET: f64 = 1e-9;
/// Residual checks on differenced data need at least this many intervals.
pub const MIN_INTERVALS: usize = 64;
/// Curvature estimates below this make the torsion estimate indeterminate.
pub const ESTIMATE_KAPPA_FLOOR: f64 = 1e-6;
/// Below this |du/ds| of the distinguished component the reparametrization
/// (which divides by (du/ds)⁵) is treated as singular.
pub const ESTIMATE_SPEED_FLOOR: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub distance: f64,
    pub identities: f64,
    pub tangent: f64,
    pub speed: f64,
    pub r3: f64,
    pub binormal: f64,
    /// Informational estimate comparisons only.
    pub estimates: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            distance: 1e-10,
            identities: 1e-12,
            tangent: 1e-6,
            speed: 1e-6,
            r3: 1e-5,
            binormal: 1e-12,
            estimates: 1e-4,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 7] = ["distance", "identities", "tangent", "speed", "r3", "binormal", "estimates"];

    /// Override one tolerance by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Config(format!("tolerance {name} must be finite and non-negative, got {value}")));
        }
        let slot = match name {
            "distance" => &mut self.distance,
            "identities" => &mut self.identities,
            "tangent" => &mut self.tangent,
            "speed" => &mut self.speed,
            "r3" => &mut self.r3,
            "binormal" => &mut self.binormal,
            "estimates" => &mut self.estimates,
            other => {
                return Err(Error::Config(format!(
                    "unknown tolerance '{other}' (expected one of {})",
                    Self::NAMES.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}

/// One gating check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    /// Largest observed residual (auxiliary norm).
    pub observed: f64,
    /// Largest expected residual (auxiliary norm).
    pub expected: f64,
    /// Largest pointwise |observed − expected|.
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualEntry {
    pub fn new(observed: f64, expected: f64, deviation: f64, tolerance: f64) -> Self {
        // NaN deviations fail
        ResidualEntry { observed, expected, deviation, tolerance, pass: deviation <= tolerance }
    }

    fn scalar(observed: f64, expected: f64, tolerance: f64) -> Self {
        let deviation = (observed - expected).abs() / expected.abs().max(1.0);
        Self::new(observed, expected, deviation, tolerance)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoStatus {
    Agrees,
    Differs,
    Indeterminate,
    Unspecified,
}

/// A non-gating comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfoEntry {
    pub status: InfoStatus,
    pub observed: Option<f64>,
    pub expected: Option<f64>,
    pub deviation: Option<f64>,
    pub detail: String,
}

impl InfoEntry {
    fn compare(observed: f64, expected: f64, deviation: f64, tolerance: f64, detail: String) -> Self {
        let status = if deviation <= tolerance { InfoStatus::Agrees } else { InfoStatus::Differs };
        InfoEntry { status, observed: Some(observed), expected: Some(expected), deviation: Some(deviation), detail }
    }

    fn without_value(status: InfoStatus, detail: String) -> Self {
        InfoEntry { status, observed: None, expected: None, deviation: None, detail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParamEcho {
    pub tau: f64,
    pub phi: f64,
    pub gamma0: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub r: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub case: SpaceCase,
    pub params: ParamEcho,
    pub checks: BTreeMap<String, ResidualEntry>,
    pub info: BTreeMap<String, InfoEntry>,
    pub notes: Vec<String>,
    pub tolerances: Tolerances,
    pub pass: bool,
}

impl DiagnosticsReport {
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, e)| !e.pass).map(|(k, _)| k.as_str()).collect()
    }
}

fn to_matrix(frame: &Frame) -> DMatrix<f64> {
    let n = frame.dim();
    DMatrix::from_fn(n, n, |r, c| frame.e(c)[r])
}

/// Coefficients c with Σ cᵢEᵢ = v.
pub fn frame_coefficients(frame: &Frame, v: &GVec) -> Result<Vec<f64>> {
    FrameSolver::new(frame)?.solve(v)
}

/// Inverse of one frame, reused across the residuals at a sample.
struct FrameSolver {
    inverse: DMatrix<f64>,
}

impl FrameSolver {
    fn new(frame: &Frame) -> Result<Self> {
        let m = to_matrix(frame);
        let det = m.determinant();
        if !(det.abs() >= DEGENERATE_DET) {
            return Err(Error::DegenerateFrame { det });
        }
        let inverse = m.lu().try_inverse().ok_or(Error::DegenerateFrame { det })?;
        Ok(FrameSolver { inverse })
    }

    fn solve(&self, v: &GVec) -> Result<Vec<f64>> {
        let n = self.inverse.nrows();
        if v.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
        }
        let x = &self.inverse * nalgebra::DVector::from_column_slice(v.as_slice());
        Ok(x.iter().copied().collect())
    }
}

fn solvers(frames: &[Frame]) -> Result<Vec<FrameSolver>> {
    frames.iter().map(FrameSolver::new).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, nan_max)
}

/// max that propagates NaN so corrupted data cannot pass.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Running maxima of observed norm, expected norm and deviation.
#[derive(Default)]
struct Accumulator {
    observed: f64,
    expected: f64,
    deviation: f64,
}

impl Accumulator {
    fn push(&mut self, observed: &[f64], expected: &[f64]) {
        self.observed = nan_max(self.observed, norm(observed));
        self.expected = nan_max(self.expected, norm(expected));
        self.deviation = nan_max(self.deviation, max_diff(observed, expected));
    }

    fn entry(&self, tolerance: f64) -> ResidualEntry {
        ResidualEntry::new(self.observed, self.expected, self.deviation, tolerance)
    }
}

fn interior(len: usize) -> Range<usize> {
    fd::BOUNDARY..len.saturating_sub(fd::BOUNDARY)
}

/// Derivatives of every sample, differencing each component column once.
fn derivative_all(values: &[GVec], h: f64) -> Vec<GVec> {
    let n = values[0].dim();
    let mut out = vec![GVec::zeros(n); values.len()];
    for k in 0..n {
        let column: Vec<f64> = values.iter().map(|v| v[k]).collect();
        for (i, o) in out.iter_mut().enumerate() {
            o[k] = fd::derivative(&column, h, i, 1);
        }
    }
    out
}

fn require_intervals(pair: &TransformedPair) -> Result<()> {
    let n = pair.params.grid.n;
    if n < MIN_INTERVALS {
        return Err(Error::GridTooCoarse { n, min: MIN_INTERVALS });
    }
    Ok(())
}

/// Signed displacement coefficient ρ of a pair.
pub fn pair_rho(pair: &TransformedPair) -> f64 {
    displacement_coefficient(pair.params.space, pair.params.tau0, pair.params.c)
}

/// Distance check plus the auxiliary degenerate-norm reading.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceCheck {
    pub coefficients: ResidualEntry,
    /// g_norm(α̃ − α) against |first coefficient|, which is what the
    /// degenerate product reads.
    pub degenerate_norm: InfoEntry,
}

pub fn check_distance(pair: &TransformedPair, tol: &Tolerances) -> Result<DistanceCheck> {
    let space = pair.params.space;
    let rho = pair_rho(pair);
    let d = space.dim();
    let mut acc = Accumulator::default();
    let (mut gmax, mut gmin, mut gdev, mut gexp) = (0.0f64, f64::INFINITY, 0.0f64, 0.0f64);
    for (i, (seed, image)) in pair.seed_curve.positions().iter().zip(pair.image_curve.positions()).enumerate() {
        let v = *image - *seed;
        let c = frame_coefficients(&pair.seed_frenet.frames[i], &v)?;
        let e = expected::displacement(space, pair.gamma[i], rho);
        acc.push(&c, &e[..d]);
        let gn = g_norm(space, &v)?;
        let read = e[0].abs();
        gmax = nan_max(gmax, gn);
        gmin = gmin.min(gn);
        gexp = gexp.max(read);
        gdev = nan_max(gdev, (gn - read).abs());
    }
    Ok(DistanceCheck {
        coefficients: acc.entry(tol.distance),
        degenerate_norm: InfoEntry::compare(
            gmax,
            gexp,
            gdev,
            tol.estimates,
            format!("auxiliary reading: degenerate norm of the displacement, spread {:e}", gmax - gmin),
        ),
    })
}

/// Finite-difference κ̂, τ̂ of a curve. Curvature is `None` where the
/// distinguished component stalls ([`ESTIMATE_SPEED_FLOOR`]); torsion is also
/// `None` where κ̂ is below [`ESTIMATE_KAPPA_FLOOR`].
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantEstimates {
    pub kappa: Vec<Option<f64>>,
    pub tau: Vec<Option<f64>>,
    /// Interior samples without a torsion estimate.
    pub flagged: Vec<usize>,
    /// Samples entering maxima (boundary excluded).
    pub interior: Range<usize>,
}

impl InvariantEstimates {
    /// No interior sample carries a torsion estimate.
    pub fn indeterminate(&self) -> bool {
        self.flagged.len() == self.interior.len()
    }
}

/// Applies the case's curvature and torsion formulas to differenced
/// positions. Derivatives are taken with respect to the distinguished
/// component (the Galilean arc length) by the chain rule, so the estimate is
/// meaningful for image curves that are not parametrized by it.
pub fn estimate_invariants(curve: &CurveData) -> Result<InvariantEstimates> {
    let len = curve.grid().len();
    if len < 7 {
        return Err(Error::GridTooCoarse { n: curve.grid().n, min: 6 });
    }
    let space = curve.space();
    let d = space.distinguished_index();
    let table = curve.clone().tabulated().derivative_table();
    let mut kappa = Vec::with_capacity(len);
    let mut tau = Vec::with_capacity(len);
    for [d1, d2, d3] in &table {
        let (u1, u2, u3) = (d1[d], d2[d], d3[d]);
        // the two or three non-distinguished components, reparametrized
        let spatial: Vec<usize> = (0..space.dim()).filter(|&k| k != d).collect();
        let mut a = [0.0; 3];
        let mut b = [0.0; 3];
        let mut c = [0.0; 3];
        for (slot, &k) in spatial.iter().enumerate() {
            let (f1, f2, f3) = (d1[k], d2[k], d3[k]);
            let f2u = f2 * u1 - f1 * u2;
            a[slot] = f1 / u1;
            b[slot] = f2u / u1.powi(3);
            c[slot] = ((f3 * u1 - f1 * u3) * u1 - 3.0 * u2 * f2u) / u1.powi(5);
        }
        let (k, t) = match space {
            SpaceCase::G4 => {
                let k = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
                let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]);
                (k, det / (k * k))
            }
            _ => {
                let (x2, y2, x3, y3) = (b[0], b[1], c[0], c[1]);
                let q = if space == SpaceCase::G3 { x2 * x2 + y2 * y2 } else { x2 * x2 - y2 * y2 };
                let k = q.abs().sqrt();
                (k, (x2 * y3 - y2 * x3) / (k * k))
            }
        };
        let regular = u1.abs() >= ESTIMATE_SPEED_FLOOR;
        kappa.push(regular.then_some(k));
        tau.push((regular && k >= ESTIMATE_KAPPA_FLOOR).then_some(t));
    }
    let interior = interior(len);
    let flagged = interior.clone().filter(|&i| tau[i].is_none()).collect();
    Ok(InvariantEstimates { kappa, tau, flagged, interior })
}

/// Tangent mismatch D = dα̃/ds − Ẽ₁ and the speed deficit, both in seed-frame
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCheck {
    pub mismatch: ResidualEntry,
    pub speed_deficit: ResidualEntry,
}

pub fn tangent_mismatch(pair: &TransformedPair, tol: &Tolerances) -> Result<TangentCheck> {
    require_intervals(pair)?;
    let p = &pair.params;
    let space = p.space;
    let d = space.dim();
    let rho = pair_rho(pair);
    let h = p.grid.h();
    let frames = solvers(&pair.seed_frenet.frames)?;
    let velocity = derivative_all(pair.image_curve.positions(), h);
    let mut mismatch = Accumulator::default();
    let mut deficit = Accumulator::default();
    for i in interior(p.grid.len()) {
        let g = pair.gamma[i];
        let k = pair.seed_frenet.kappa[i];
        let dv = frames[i].solve(&velocity[i])?;
        let e1 = frames[i].solve(&pair.image_frames[i].e(0))?;
        let observed: Vec<f64> = dv.iter().zip(&e1).map(|(a, b)| a - b).collect();
        mismatch.push(&observed, &expected::tangent_mismatch(space, g, k, p.phi, rho)[..d]);
        deficit.push(&[1.0 - dv[0]], &[expected::speed_deficit(space, g, p.phi)]);
    }
    Ok(TangentCheck { mismatch: mismatch.entry(tol.tangent), speed_deficit: deficit.entry(tol.speed) })
}

/// R₃ = dẼ₃/ds ∓ τ̃Ẽ₂ and the binormal angle.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameIdentityCheck {
    pub r3: ResidualEntry,
    /// E₃-coefficient of Ẽ₃ against cos φ / cosh φ.
    pub binormal_angle: ResidualEntry,
}

pub fn frame_identity_residuals(pair: &TransformedPair, tol: &Tolerances) -> Result<FrameIdentityCheck> {
    require_intervals(pair)?;
    let p = &pair.params;
    let space = p.space;
    let d = space.dim();
    let h = p.grid.h();
    let frames = solvers(&pair.seed_frenet.frames)?;
    let e3: Vec<GVec> = pair.image_frames.iter().map(|f| f.e(2)).collect();
    let de3 = derivative_all(&e3, h);
    // Ẽ₃' = −τ̃Ẽ₂ (G³, G⁴) or +τ̃Ẽ₂ (G¹₃)
    let sign = if space.is_pseudo() { 1.0 } else { -1.0 };
    let image_tau = predicted_torsion(space, p.tau0);
    let cos_phi = if space.is_circular() { p.phi.cos() } else { p.phi.cosh() };
    let mut r3 = Accumulator::default();
    let mut angle = Accumulator::default();
    for i in 0..p.grid.len() {
        let c3 = frames[i].solve(&e3[i])?;
        angle.push(&[c3[2] - cos_phi], &[0.0]);
        if !interior(p.grid.len()).contains(&i) {
            continue;
        }
        let residual = de3[i] - (sign * image_tau) * pair.image_frames[i].e(1);
        let observed = frames[i].solve(&residual)?;
        let k = pair.seed_frenet.kappa[i];
        r3.push(&observed, &expected::binormal_residual(space, pair.gamma[i], k, p.tau0, p.phi)[..d]);
    }
    Ok(FrameIdentityCheck { r3: r3.entry(tol.r3), binormal_angle: angle.entry(tol.binormal) })
}

fn estimate_info(
    estimates: &InvariantEstimates,
    value: impl Fn(&InvariantEstimates, usize) -> Option<f64>,
    expected: impl Fn(usize) -> f64,
    tol: f64,
    what: &str,
) -> InfoEntry {
    let mut acc = Accumulator::default();
    let mut used = 0;
    for i in estimates.interior.clone() {
        if let Some(v) = value(estimates, i) {
            acc.push(&[v], &[expected(i)]);
            used += 1;
        }
    }
    let excluded = estimates.interior.len() - used;
    if used == 0 {
        return InfoEntry::without_value(
            InfoStatus::Indeterminate,
            format!(
                "{what}: all {excluded} interior samples excluded (vanishing curvature or stalled parametrization)"
            ),
        );
    }
    let detail = if excluded > 0 { format!("{what}; {excluded} interior samples excluded") } else { what.to_string() };
    InfoEntry::compare(acc.observed, acc.expected, acc.deviation, tol, detail)
}

/// Runs every check on a pair and collects notes.
pub fn full_report(pair: &TransformedPair, tol: &Tolerances) -> Result<DiagnosticsReport> {
    let p = pair.params;
    let space = p.space;
    let rho = pair_rho(pair);
    let rad = radius(space, p.tau0, p.phi)?;
    let mut checks = BTreeMap::new();
    let mut info = BTreeMap::new();
    let mut notes = Vec::new();

    let distance = check_distance(pair, tol)?;
    checks.insert("distance_coefficients".into(), distance.coefficients);
    info.insert("degenerate_norm".into(), distance.degenerate_norm);
    checks.insert("distance_length".into(), ResidualEntry::scalar(rho.abs(), p.r, tol.identities));
    checks.insert("displacement_identity".into(), ResidualEntry::scalar(rho, rad.signed, tol.identities));
    checks.insert(
        "radius_half_angle_form".into(),
        ResidualEntry::scalar(rad.half_angle_form, rad.signed, tol.identities),
    );

    let tangent = tangent_mismatch(pair, tol)?;
    checks.insert("tangent_mismatch".into(), tangent.mismatch);
    checks.insert("speed_deficit".into(), tangent.speed_deficit);
    let frame = frame_identity_residuals(pair, tol)?;
    checks.insert("frame_identity_r3".into(), frame.r3);
    checks.insert("binormal_angle".into(), frame.binormal_angle);

    let kappa = &pair.seed_frenet.kappa;
    let dgamma = |i: usize| gamma_rhs(space, pair.gamma[i], p.tau0, p.phi, kappa[i]);

    let seed = estimate_invariants(&pair.seed_curve)?;
    info.insert(
        "seed_curvature_estimate".into(),
        estimate_info(&seed, |e, i| e.kappa[i], |i| kappa[i].abs(), tol.estimates, "seed |kappa|"),
    );
    info.insert("seed_torsion_estimate".into(), torsion_info(&seed, |_| p.tau0, tol.estimates, "seed torsion"));

    let image = estimate_invariants(&pair.image_curve)?;
    let param_note = "image reparametrized by its distinguished component";
    match predicted_curvature(space, kappa[0], dgamma(0)) {
        CurvaturePrediction::Unspecified => {
            info.insert(
                "image_curvature_estimate".into(),
                InfoEntry::without_value(InfoStatus::Unspecified, "no curvature relation stated for this case".into()),
            );
        }
        CurvaturePrediction::Predicted { .. } => {
            let predicted = |i: usize| match predicted_curvature(space, kappa[i], dgamma(i)) {
                CurvaturePrediction::Predicted { kappa, .. } => kappa.abs(),
                CurvaturePrediction::Unspecified => f64::NAN,
            };
            info.insert(
                "image_curvature_estimate".into(),
                estimate_info(
                    &image,
                    |e, i| e.kappa[i],
                    predicted,
                    tol.estimates,
                    &format!("image |kappa| against the predicted relation; {param_note}"),
                ),
            );
        }
    }
    info.insert(
        "image_torsion_estimate".into(),
        torsion_info(
            &image,
            |_| predicted_torsion(space, p.tau0),
            tol.estimates,
            &format!("image torsion against the predicted relation; {param_note}"),
        ),
    );

    if space == SpaceCase::G3 {
        let mut acc = Accumulator::default();
        let mut all_match = true;
        for (i, &ki) in kappa.iter().enumerate() {
            if let CurvaturePrediction::Predicted { kappa: k, input_matches } =
                predicted_curvature(space, ki, dgamma(i))
            {
                acc.push(&[ki], &[k]);
                all_match &= input_matches == Some(true);
            }
        }
        let mut entry = InfoEntry::compare(
            acc.observed,
            acc.expected,
            acc.deviation,
            crate::backlund::CURVATURE_MATCH_TOL,
            "seed kappa against -2 dgamma/ds".into(),
        );
        if !all_match {
            entry.status = InfoStatus::Differs;
        }
        info.insert("seed_curvature_relation".into(), entry);
    }

    notes.extend(case_notes(pair, rad.r));
    if kappa.iter().all(|k| k.abs() < VANISHING_CURVATURE) {
        notes.push("degenerate seed (kappa = 0): trihedron undefined, frames taken from the input".into());
    }
    if tangent.speed_deficit.expected > 1e-12 {
        notes.push(format!(
            "image is not unit speed: max |1 - E1 coefficient of the image velocity| = {:e}",
            tangent.speed_deficit.expected
        ));
    }
    let hits_excluded = pair.gamma.iter().any(|&g| match space {
        SpaceCase::Pg3Tn => g.abs() < 1e-9,
        _ => g.cos().abs() < 1e-9,
    });
    if hits_excluded {
        notes.push(match space {
            SpaceCase::Pg3Tn => "gamma reaches 0, excluded by the angle condition (not enforced)".into(),
            _ => "gamma reaches pi/2 mod pi, excluded by the angle condition (not enforced)".into(),
        });
    }

    let pass = checks.values().all(|e| e.pass);
    Ok(DiagnosticsReport {
        case: space,
        params: ParamEcho {
            tau: p.tau0,
            phi: p.phi,
            gamma0: p.gamma0,
            c: p.c,
            r: p.r,
            s_min: p.grid.s_min,
            s_max: p.grid.s_max,
            n: p.grid.n,
        },
        checks,
        info,
        notes,
        tolerances: *tol,
        pass,
    })
}

fn torsion_info(est: &InvariantEstimates, expected: impl Fn(usize) -> f64, tol: f64, what: &str) -> InfoEntry {
    estimate_info(est, |e, i| e.tau[i], expected, tol, what)
}

fn case_notes(pair: &TransformedPair, r: f64) -> Vec<String> {
    let p = &pair.params;
    let mut notes = Vec::new();
    match p.space {
        SpaceCase::G3 | SpaceCase::G4 => {
            notes.push(
                "frame set typo repaired: hyperbolic cosh(phi) in the second vector and sinh(phi) in the binormal \
                 derivative read as cos(phi), sin(phi)"
                    .into(),
            );
            notes.push("angle equation uses tan(phi/2) (circular), not tanh(phi/2)".into());
        }
        SpaceCase::Pg3Tb | SpaceCase::Pg3Tn => {
            notes.push("trihedron typo repaired: E3 = eps (0, y'', x'')/kappa (undefined z'' read as x'')".into());
            notes.push("no curvature relation stated for the pseudo-Galilean cases".into());
            if let Some(f) = pair.seed_frenet.frames.first() {
                if let Ok(c) = classify(p.space, &f.e(1)) {
                    notes.push(format!("seed principal normal: {c}"));
                    let (want, label) = if p.space == SpaceCase::Pg3Tb {
                        (Causal::Spacelike, "spacelike")
                    } else {
                        (Causal::Timelike, "timelike")
                    };
                    if c != Classification::Isotropic(Some(want)) {
                        notes.push(format!("{} case expects a {label} principal normal", p.space));
                    }
                }
            }
        }
    }
    if p.space == SpaceCase::G4 {
        notes.push("E3 = (E2' + kappa E1)/tau, consistent with the Frenet system".into());
    }
    if p.space == SpaceCase::Pg3Tn {
        notes.push(format!(
            "torsion relation sign conflict: tau~ = -tau adopted; signed reading sinh(phi)/(r tau) = {}",
            p.phi.sinh() / (r * p.tau0)
        ));
        notes.push(
            "angle equation with tau~ = -tau leaves nonzero expected tangent and binormal residuals even for kappa = 0"
                .into(),
        );
    }
    notes
}
