//! Command-line front end.
//!
//! Exit status: 0 success, 1 invalid input, 2 a verification verdict failed.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::backlund::transform_curve;
use crate::curves::{curve_family, frenet_apparatus, FamilyParams, FrenetData};
use crate::error::{Error, Result};
use crate::gamma::{backlund_constant, radius, solve_gamma, BacklundParams};
use crate::grid::Grid;
use crate::io::{self, CurveFile, Meta};
use crate::parallel::{self, Execution};
use crate::spaces::SpaceCase;
use crate::tabulated::Tabulated;
use crate::verify::{full_report, DiagnosticsReport, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "galbacklund", version, about = "Bäcklund transformations of curves in G3, G1_3 and G4")]
#[command(args_override_self = true)]
pub struct RunConfig {
    /// key=value file mirroring the long flags; command-line flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seed curve from a named family to CSV.
    Generate(GenerateArgs),
    /// Transform a seed curve CSV into a pair CSV.
    Transform(TransformArgs),
    /// Audit a pair CSV and write a JSON report.
    Verify(VerifyArgs),
    /// Verify every point of a (phi, gamma0) grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Clone)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub s_min: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub s_max: f64,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<Grid> {
        Grid::new(self.s_min, self.s_max, self.samples)
    }
}

#[derive(Debug, Args, Clone)]
pub struct GenerateArgs {
    #[arg(long = "case")]
    pub case: SpaceCase,
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(crate::curves::FAMILY_NAMES))]
    pub family: String,
    /// Seed torsion (backlund-consistent; frame torsion of a line).
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma0: Option<f64>,
    /// Constant G4 seed curvature for backlund-consistent.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub kappa: f64,
    /// Line coefficients a,b,c,d.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub line: Option<Vec<f64>>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Clone)]
pub struct TransformArgs {
    /// Must agree with the seed file's case when given.
    #[arg(long = "case")]
    pub case: Option<SpaceCase>,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Defaults to the seed metadata, then to the seed's first torsion sample.
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Clone)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Tolerance override name=value (repeatable).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Debug, Args, Clone)]
pub struct SweepArgs {
    #[arg(long = "case")]
    pub case: SpaceCase,
    /// Seed family, regenerated at every point (backlund-consistent follows phi, gamma0).
    #[arg(long, default_value = "backlund-consistent",
          value_parser = clap::builder::PossibleValuesParser::new(crate::curves::FAMILY_NAMES))]
    pub family: String,
    /// Fixed seed CSV instead of a family.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub kappa: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub phi_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub phi_max: f64,
    #[arg(long, default_value_t = 1)]
    pub phi_steps: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma0_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma0_max: f64,
    #[arg(long, default_value_t = 1)]
    pub gamma0_steps: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Directory for per-point reports and summary.json.
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Evaluate points one after another.
    #[arg(long)]
    pub sequential: bool,
}

/// Parses arguments (expanding `--config`) and runs; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

/// Splices `key=value` lines of a `--config` file in right after the
/// subcommand so later command-line flags override them.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy().into_owned();
        if s == "--config" {
            path = Some(it.next().ok_or_else(|| Error::Config("--config needs a path".into()))?);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let mut injected = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key=value, got '{line}'", i + 1)))?;
        let key = k.trim().replace('_', "-");
        let value = v.trim();
        match value {
            "true" => injected.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => injected.push(OsString::from(format!("--{key}={value}"))),
        }
    }
    // position of the subcommand: first non-flag argument after the binary name
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|p| p + 2)
        .ok_or_else(|| Error::Config("a subcommand is required".into()))?;
    rest.splice(at..at, injected);
    Ok(rest)
}

/// Verdict of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

pub fn run(config: RunConfig) -> i32 {
    let result = match config.command {
        Command::Generate(a) => generate(&a),
        Command::Transform(a) => transform(&a),
        Command::Verify(a) => verify(&a),
        Command::Sweep(a) => sweep(&a),
    };
    match result {
        Ok(Outcome::Passed) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if path.as_os_str().is_empty() {
        return Err(Error::Config("output path must be non-empty".into()));
    }
    File::create(path).map(BufWriter::new).map_err(|e| Error::Io(format!("cannot create {}: {e}", path.display())))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

/// Rejects φ and τ outside the transformation's domain before any file work.
fn check_domain(space: SpaceCase, tau: Option<f64>, phi: Option<f64>) -> Result<()> {
    if let Some(phi) = phi {
        backlund_constant(space, 1.0, phi)?;
    }
    if let Some(tau) = tau {
        radius(space, tau, phi.unwrap_or(1.0))?;
    }
    Ok(())
}

fn parse_tolerances(specs: &[String]) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for spec in specs {
        let (name, value) =
            spec.split_once('=').ok_or_else(|| Error::Config(format!("--tol expects NAME=VALUE, got '{spec}'")))?;
        let value: f64 =
            value.trim().parse().map_err(|_| Error::Config(format!("--tol {name}: '{value}' is not a number")))?;
        tol.set(name.trim(), value)?;
    }
    Ok(tol)
}

struct Seed {
    curve: crate::curves::CurveData,
    frenet: FrenetData,
    gamma: Option<Vec<f64>>,
    notes: Vec<String>,
}

fn family_seed(family: &str, p: &FamilyParams) -> Result<Seed> {
    let fam = curve_family(family, p)?;
    let frenet = match fam.frenet {
        Some(f) => f,
        None => frenet_apparatus(&fam.curve)?,
    };
    Ok(Seed { curve: fam.curve, frenet, gamma: fam.gamma, notes: fam.notes })
}

fn generate(a: &GenerateArgs) -> Result<Outcome> {
    let grid = a.grid.grid()?;
    let mut p = FamilyParams::new(a.case, grid);
    p.kappa = a.kappa;
    if a.family == "backlund-consistent" {
        p.tau = a.tau.ok_or_else(|| Error::Config("backlund-consistent needs --tau".into()))?;
        p.phi = a.phi.ok_or_else(|| Error::Config("backlund-consistent needs --phi".into()))?;
        p.gamma0 = a.gamma0.ok_or_else(|| Error::Config("backlund-consistent needs --gamma0".into()))?;
        check_domain(a.case, Some(p.tau), Some(p.phi))?;
    } else {
        p.tau = a.tau.unwrap_or(1.0);
    }
    if let Some(line) = &a.line {
        p.line = line
            .as_slice()
            .try_into()
            .map_err(|_| Error::Config(format!("--line expects 4 values a,b,c,d, got {}", line.len())))?;
    }
    let seed = family_seed(&a.family, &p)?;
    let mut meta = Meta::new();
    meta.insert("family".into(), a.family.clone());
    if a.family == "backlund-consistent" {
        meta.insert("tau".into(), io::fmt_f64(p.tau));
        meta.insert("phi".into(), io::fmt_f64(p.phi));
        meta.insert("gamma0".into(), io::fmt_f64(p.gamma0));
        if a.case == SpaceCase::G4 {
            meta.insert("kappa".into(), io::fmt_f64(p.kappa));
        }
    } else if a.family == "line" {
        meta.insert("tau".into(), io::fmt_f64(p.tau));
    }
    for n in &seed.notes {
        eprintln!("note: {n}");
    }
    let mut out = create(&a.out)?;
    io::write_curve(&mut out, &seed.curve, &seed.frenet, &meta)?;
    out.flush()?;
    Ok(Outcome::Passed)
}

fn transform(a: &TransformArgs) -> Result<Outcome> {
    if let Some(space) = a.case {
        check_domain(space, a.tau, a.phi)?;
    }
    let seed = io::read_curve(open(&a.input)?)?;
    let space = seed.curve.space();
    if let Some(c) = a.case {
        if c != space {
            return Err(Error::CaseMismatch {
                space: c.to_string(),
                detail: format!("seed file holds a {space} curve"),
            });
        }
    }
    let params = resolve_params(&seed, a.tau, a.phi, a.gamma0)?;
    let gamma = solve_for(&params, &seed.frenet)?;
    let pair = transform_curve(&seed.curve, &seed.frenet, &gamma, &params)?;
    let mut out = create(&a.out)?;
    io::write_pair(&mut out, &pair)?;
    out.flush()?;
    Ok(Outcome::Passed)
}

fn resolve_params(seed: &CurveFile, tau: Option<f64>, phi: Option<f64>, gamma0: Option<f64>) -> Result<BacklundParams> {
    let space = seed.curve.space();
    let tau = match tau {
        Some(t) => t,
        None => seed.meta_f64("tau")?.unwrap_or(seed.frenet.tau[0]),
    };
    let phi = phi.or(seed.meta_f64("phi")?).ok_or_else(|| Error::Config("--phi is required".into()))?;
    let gamma0 = gamma0.or(seed.meta_f64("gamma0")?).ok_or_else(|| Error::Config("--gamma0 is required".into()))?;
    BacklundParams::new(space, tau, phi, gamma0, *seed.curve.grid())
}

fn solve_for(params: &BacklundParams, frenet: &FrenetData) -> Result<Vec<f64>> {
    if params.space == SpaceCase::G4 {
        let kappa = Tabulated::new(params.grid, frenet.kappa.clone());
        solve_gamma(params, Some(&move |s| kappa.eval(s)))
    } else {
        solve_gamma(params, None)
    }
}

fn emit_report(report: &DiagnosticsReport, path: Option<&Path>) -> Result<()> {
    let json = io::to_json(report)?;
    match path {
        Some(p) => {
            let mut out = create(p)?;
            out.write_all(json.as_bytes())?;
            out.flush()?;
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let tol = parse_tolerances(&a.tol)?;
    let pair = io::read_pair(open(&a.input)?)?;
    let report = full_report(&pair, &tol)?;
    emit_report(&report, a.report.as_deref())?;
    if report.pass {
        Ok(Outcome::Passed)
    } else {
        eprintln!("verification failed: {}", report.failing().join(", "));
        Ok(Outcome::Failed)
    }
}

#[derive(Debug, Serialize)]
struct SweepPoint {
    phi: f64,
    gamma0: f64,
    pass: bool,
    failing: Vec<String>,
    report: String,
}

#[derive(Debug, Serialize)]
struct SweepSummary {
    case: SpaceCase,
    family: Option<String>,
    total: usize,
    passed: usize,
    points: Vec<SweepPoint>,
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Config("step counts must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps).map(|i| if i == steps - 1 { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 }).collect())
}

/// One sweep point: seed, pair, report.
#[allow(clippy::too_many_arguments)]
pub fn sweep_point(
    space: SpaceCase,
    family: Option<&str>,
    fixed_seed: Option<&CurveFile>,
    tau: Option<f64>,
    kappa: f64,
    grid: Grid,
    phi: f64,
    gamma0: f64,
    tol: &Tolerances,
) -> Result<DiagnosticsReport> {
    let (curve, frenet, params, gamma) = match fixed_seed {
        Some(seed) => {
            let params = resolve_params(seed, tau, Some(phi), Some(gamma0))?;
            let gamma = solve_for(&params, &seed.frenet)?;
            (seed.curve.clone(), seed.frenet.clone(), params, gamma)
        }
        None => {
            let mut p = FamilyParams::new(space, grid);
            p.tau = tau.unwrap_or(1.0);
            p.phi = phi;
            p.gamma0 = gamma0;
            p.kappa = kappa;
            let name = family.unwrap_or("backlund-consistent");
            let seed = family_seed(name, &p)?;
            let tau0 = tau.unwrap_or(seed.frenet.tau[0]);
            let params = BacklundParams::new(space, tau0, phi, gamma0, grid)?;
            let gamma = match seed.gamma {
                Some(g) => g,
                None => solve_for(&params, &seed.frenet)?,
            };
            (seed.curve, seed.frenet, params, gamma)
        }
    };
    let pair = transform_curve(&curve, &frenet, &gamma, &params)?;
    full_report(&pair, tol)
}

fn sweep(a: &SweepArgs) -> Result<Outcome> {
    let tol = parse_tolerances(&a.tol)?;
    let phis = linspace(a.phi_min, a.phi_max, a.phi_steps)?;
    let gammas = linspace(a.gamma0_min, a.gamma0_max, a.gamma0_steps)?;
    for &phi in &phis {
        check_domain(a.case, a.tau, Some(phi))?;
    }
    let fixed = a.input.as_deref().map(|p| io::read_curve(open(p)?)).transpose()?;
    if let Some(seed) = &fixed {
        if seed.curve.space() != a.case {
            return Err(Error::CaseMismatch {
                space: a.case.to_string(),
                detail: format!("seed file holds a {} curve", seed.curve.space()),
            });
        }
    }
    let grid = match &fixed {
        Some(seed) => *seed.curve.grid(),
        None => a.grid.grid()?,
    };
    let points: Vec<(usize, usize)> = (0..phis.len()).flat_map(|i| (0..gammas.len()).map(move |j| (i, j))).collect();
    let exec = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let family = fixed.is_none().then_some(a.family.as_str());
    let reports = parallel::map(exec, &points, |&(i, j)| {
        sweep_point(a.case, family, fixed.as_ref(), a.tau, a.kappa, grid, phis[i], gammas[j], &tol)
    });
    fs::create_dir_all(&a.out_dir).map_err(|e| Error::Io(format!("cannot create {}: {e}", a.out_dir.display())))?;
    let mut summary = SweepSummary {
        case: a.case,
        family: family.map(str::to_string),
        total: points.len(),
        passed: 0,
        points: Vec::with_capacity(points.len()),
    };
    for (&(i, j), report) in points.iter().zip(reports) {
        let report =
            report.map_err(|e| Error::Config(format!("sweep point phi = {}, gamma0 = {}: {e}", phis[i], gammas[j])))?;
        let name = format!("point_{i:03}_{j:03}.json");
        emit_report(&report, Some(&a.out_dir.join(&name)))?;
        summary.passed += report.pass as usize;
        summary.points.push(SweepPoint {
            phi: phis[i],
            gamma0: gammas[j],
            pass: report.pass,
            failing: report.failing().into_iter().map(str::to_string).collect(),
            report: name,
        });
    }
    let mut out = create(&a.out_dir.join("summary.json"))?;
    out.write_all(io::to_json(&summary)?.as_bytes())?;
    out.flush()?;
    Ok(if summary.passed == summary.total { Outcome::Passed } else { Outcome::Failed })
}
