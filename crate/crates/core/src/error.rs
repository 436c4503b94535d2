use thiserror::Error;

use crate::spectra::Topology;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures surfaced by the numerical routines.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type used
/// for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument `{name}` must be positive, got {value}")]
    NonPositiveArgument { name: &'static str, value: f64 },

    #[error("lattice tail not certified at x = {x}: bound {tail_bound:e} > {tail_tol:e} at max_index {max_index}")]
    TailNotConverged {
        x: f64,
        max_index: u32,
        tail_bound: f64,
        tail_tol: f64,
    },

    #[error("cutoff radius {radius} is below the minimum of 2")]
    CutoffTooSmall { radius: f64 },

    #[error("all correction terms underflow at rho = {rho}")]
    ArgumentUnderflow { rho: f64 },

    #[error(
        "no sign change for rho = {rho}: residual {f_lo:e} at s = {s_lo}, {f_hi:e} at s = {s_hi}"
    )]
    BracketingFailed {
        rho: f64,
        s_lo: f64,
        f_lo: f64,
        s_hi: f64,
        f_hi: f64,
    },

    #[error("root refinement did not converge after {iterations} iterations (rho = {rho})")]
    RootNotConverged { rho: f64, iterations: usize },

    #[error("rho = {rho} is below the supported domain (>= {min})")]
    RhoOutOfDomain { rho: f64, min: f64 },

    #[error("operation not defined for topology {0}")]
    UnsupportedTopology(Topology),

    #[error("coupling scales differ: {a} vs {b}")]
    ScaleMismatch { a: f64, b: f64 },

    #[error("estimator spread {spread:.3e} exceeds 5% across the rho window")]
    WindowTooNarrow { spread: f64 },

    #[error("at least {needed} samples are required, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("rho window [{lo}, {hi}] must lie inside [15, 40]")]
    WindowOutOfRange { lo: f64, hi: f64 },

    #[error("scale factor must be positive, got {a}")]
    NonPositiveScaleFactor { a: f64 },

    #[error("scale factor {a} lies outside (0, 1]")]
    ScaleFactorOutOfRange { a: f64 },

    #[error("particle horizon requires omega_r0 > 0")]
    RadiationRequired,

    #[error("quadrature error {error:e} above requested {requested:e}")]
    QuadratureNotConverged { error: f64, requested: f64 },

    #[error("eta target {target:e} outside the achievable range [{min:e}, {max:e}]")]
    TargetOutOfRange { target: f64, min: f64, max: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable identifier used in machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveArgument { .. } => "NonPositiveArgument",
            Error::TailNotConverged { .. } => "TailNotConverged",
            Error::CutoffTooSmall { .. } => "CutoffTooSmall",
            Error::ArgumentUnderflow { .. } => "ArgumentUnderflow",
            Error::BracketingFailed { .. } => "BracketingFailed",
            Error::RootNotConverged { .. } => "RootNotConverged",
            Error::RhoOutOfDomain { .. } => "RhoOutOfDomain",
            Error::UnsupportedTopology(_) => "UnsupportedTopology",
            Error::ScaleMismatch { .. } => "ScaleMismatch",
            Error::WindowTooNarrow { .. } => "WindowTooNarrow",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::WindowOutOfRange { .. } => "WindowOutOfRange",
            Error::NonPositiveScaleFactor { .. } => "NonPositiveScaleFactor",
            Error::ScaleFactorOutOfRange { .. } => "ScaleFactorOutOfRange",
            Error::RadiationRequired => "RadiationRequired",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::TargetOutOfRange { .. } => "TargetOutOfRange",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}

pub(crate) fn require_positive<T: crate::Real>(name: &'static str, value: T) -> Result<()> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument {
            name,
            value: value.as_f64(),
        })
    }
}
