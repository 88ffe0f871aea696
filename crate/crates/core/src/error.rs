//! Error types shared across the library.

use crate::quadrature::IntegralResult;

/// Which end of the horizontal-wavenumber range an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SpectralEnd {
    /// Smallest horizontal wavenumbers, `k1` or `k2 -> 0`.
    Ir,
    /// Largest horizontal wavenumbers, `k1` and `k2 -> infinity`.
    Uv,
}

impl std::fmt::Display for SpectralEnd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectralEnd::Ir => write!(f, "IR"),
            SpectralEnd::Uv => write!(f, "UV"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertical wavenumber m = 0 carries no internal-wave frequency")]
    ZeroVerticalWavenumber,

    #[error("wavenumber magnitude must be positive, got {0}")]
    NonpositiveWavenumber(f64),

    #[error("zero frequency in triad")]
    ZeroFrequency,

    #[error("triangle inequality violated for sides ({0}, {1}, {2})")]
    DegenerateTriangle(f64, f64, f64),

    #[error("({k1}, {k2}) is outside the kinematic box of k = {k}")]
    OutsideKinematicBox { k: f64, k1: f64, k2: f64 },

    #[error("vanishing resonance Jacobian (double root) on branch {0}; subdivide around it")]
    DoubleRoot(String),

    #[error("collision integral diverges at the {0} end; set an explicit cutoff")]
    CutoffRequired(SpectralEnd),

    #[error(
        "quadrature tolerance not reached: value {} with error estimate {}",
        .0.value, .0.error_estimate
    )]
    ToleranceNotReached(Box<IntegralResult>),

    #[error("{0} tail does not decay; cannot extrapolate an open-ended integral")]
    TailNotConvergent(SpectralEnd),

    #[error("no sign change in bracket [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("insufficient dynamic range for a slope fit: {0}")]
    InsufficientRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("not classifiable: {0}")]
    NotClassifiable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("failed to parse JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
