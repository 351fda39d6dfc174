use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} components, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vanishing curvature at sample {index} (s = {s}): |kappa| < 1e-9, trihedron undefined")]
    VanishingCurvature { index: usize, s: f64 },

    #[error("vanishing torsion at sample {index} (s = {s}): binormal E3 undefined in G4")]
    VanishingTorsion { index: usize, s: f64 },

    #[error("null normal at sample {index} (s = {s}): |x''^2 - y''^2| < 1e-9 while x''^2 + y''^2 >= 1e-9")]
    NullNormal { index: usize, s: f64 },

    #[error("linearly dependent frame vectors (|det| = {det:e} below {threshold:e})")]
    LinearlyDependent { det: f64, threshold: f64 },

    #[error("degenerate frame (|det| = {det:e} below 1e-9)")]
    DegenerateFrame { det: f64 },

    #[error("non-uniform grid at row {row}: spacing {found} differs from {expected}")]
    NonUniformGrid { row: usize, expected: f64, found: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("phi out of domain: {reason}")]
    PhiOutOfDomain { reason: String },

    #[error(
        "tau out of domain: the seed torsion must be nonzero (tau = sin(phi)/r with finite constant length r, condition i)"
    )]
    ZeroTorsion,

    #[error("no closed form for {0} (the angle equation carries the -kappa term)")]
    NoClosedForm(String),

    #[error("artanh domain violation: |tanh(gamma0/2) e^(-C s)| = {value} >= 1")]
    ArtanhDomain { value: f64 },

    #[error("non-constant torsion seed: |tau(s) - tau0| = {deviation:e} at sample {index} exceeds 1e-6")]
    NonConstantTorsion { index: usize, deviation: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid too coarse: N = {n} intervals, at least {min} required")]
    GridTooCoarse { n: usize, min: usize },

    #[error("unknown curve family '{0}'")]
    UnknownFamily(String),

    #[error("inadmissible curve at sample {index}: distinguished component {found} differs from s = {s}")]
    Inadmissible { index: usize, s: f64, found: f64 },

    #[error("{space} case does not match: {detail}")]
    CaseMismatch { space: String, detail: String },

    #[error("format error at row {row}, column '{column}': {message}")]
    Format { row: usize, column: String, message: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
