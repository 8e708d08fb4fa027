use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("unknown factor label `{0}`")]
    UnknownFactor(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not Hermitian (max |H - H†| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("coupling matrix is singular (|det T| = {det:.3e}); T must be invertible")]
    SingularMatrix { det: f64 },

    #[error("mixing angle θ = {theta} is an integer multiple of π; segment conditions need θ ≠ nπ")]
    ThetaMultipleOfPi { theta: f64 },

    #[error("invalid segment: {0}")]
    InvalidSegment(String),

    #[error("segments do not close a loop: {0}")]
    LoopMismatch(String),

    #[error(
        "θ = {target} is not reachable with (m, n) = ({m}, {n}); nearest lattice θ = {nearest} \
         at (m, n) = ({nearest_m}, {nearest_n})"
    )]
    Unreachable {
        target: f64,
        m: u32,
        n: u32,
        nearest: f64,
        nearest_m: u32,
        nearest_n: u32,
    },

    #[error("protocol violated: {0}")]
    Protocol(String),

    #[error("step size dt = {dt:.3e} s exceeds the stability limit {limit:.3e} s")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("trace drifted by {drift:.3e} at t = {time:.6e} s")]
    TraceDrift { drift: f64, time: f64 },

    #[error("density matrix lost positivity (min eigenvalue {min_eigenvalue:.3e} at t = {time:.6e} s)")]
    NotPositive { min_eigenvalue: f64, time: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid point (alpha = {alpha}, gamma = {gamma_hz} Hz): {source}")]
    GridPoint {
        alpha: f64,
        gamma_hz: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the numerical integration itself, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::TraceDrift { .. } | Error::NotPositive { .. } => true,
            Error::GridPoint { source, .. } => source.is_numeric(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
