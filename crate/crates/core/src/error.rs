use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical kernels and the higher-level analyses.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{function} has a pole at s = {s}")]
    Pole { function: &'static str, s: Complex64 },

    #[error("F_{{2m}}(s) has a pole at s = {s} (denominator factor k = {k})")]
    PhasePole { s: Complex64, k: u32 },

    #[error("Macdonald function requires a positive argument, got x = {0}")]
    NonPositiveArgument(f64),

    #[error("quadrature did not converge: achieved relative error {achieved:e} after {nodes} nodes")]
    QuadratureNonConvergence { achieved: f64, nodes: usize },

    #[error("lattice sum did not stabilise at p_cap = {p_cap}: relative change {change:e}")]
    TruncationNonConvergence { p_cap: usize, change: f64 },

    #[error("Chebyshev degree {0} exceeds the supported maximum of 64")]
    DegreeOverflow(u32),

    #[error("unsupported sum: {0}")]
    UnsupportedSum(String),

    #[error("direct summation diverges for Re s = {0} (needs Re s >= 1.5)")]
    Divergent(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("finite-difference step underflow at h = {0:e}")]
    StepUnderflow(f64),

    #[error("derivative estimation failed: {0}")]
    DerivativeFailure(String),

    #[error("tangent is degenerate at t = {0}: d(Delta3)/dt vanishes")]
    DegenerateTangent(f64),

    #[error("ambiguous zero label at t = {t}: {first} and {second} coincide within {tol:e}")]
    AmbiguousLabel {
        t: f64,
        first: String,
        second: String,
        tol: f64,
    },

    #[error("completed function is not real at t = {t}: |Im| / |value| = {ratio:e}")]
    NotReal { t: f64, ratio: f64 },

    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
