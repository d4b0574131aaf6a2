use thiserror::Error;

/// Errors shared across the solver, the exponent algebra and the sweep harness.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("courant number {0} outside (0, 1)")]
    CflOutOfRange(f64),

    #[error("grid too coarse: {cells} cells across the data support, need at least {needed}")]
    GridTooCoarse { cells: usize, needed: usize },

    #[error("domain too small: r_max = {r_max} but the horizon needs at least {needed}")]
    DomainTooSmall { r_max: f64, needed: f64 },

    #[error("support reached the outer boundary at t = {t:.6}; enlarge r_max")]
    BoundaryContamination { t: f64 },

    #[error("t = {t} outside the domain of the requested curve (needs t > {min})")]
    OutOfDomain { t: f64, min: f64 },

    #[error("eps = {eps:.3e} above the smallness threshold eps0 = {eps0:.3e}; bound not asserted")]
    EpsAboveThreshold { eps: f64, eps0: f64 },

    #[error("slope fit needs {needed}, got {got}")]
    InsufficientFitData { needed: String, got: String },

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
