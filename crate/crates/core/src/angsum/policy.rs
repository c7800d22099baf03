use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::QuadratureSpec;

/// Truncation of the Bessel double sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Cutoff `P` for `p₁, p₂` (the starting value when `auto` is set).
    pub p_cap: usize,
    /// Pick `P` from the order and double it until the sum is stable.
    pub auto: bool,
    /// Relative change accepted between successive truncations.
    pub stability_tol: f64,
    /// Terms below this fraction of the largest term are dropped.
    pub bessel_floor: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            p_cap: 8,
            auto: true,
            stability_tol: 1e-10,
            bessel_floor: 1e-18,
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl TruncationPolicy {
    pub const MAX_DOUBLINGS: u32 = 6;

    pub fn new(p_cap: usize, auto: bool, stability_tol: f64, bessel_floor: f64) -> Result<Self> {
        let p = Self {
            p_cap,
            auto,
            stability_tol,
            bessel_floor,
            quadrature: QuadratureSpec::default(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Fixed cutoff `P` with the default tolerances.
    pub fn fixed(p_cap: usize) -> Self {
        Self {
            p_cap,
            auto: false,
            ..Self::default()
        }
    }

    pub fn with_quadrature(mut self, q: QuadratureSpec) -> Self {
        self.quadrature = q;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_cap < 1 {
            return Err(Error::InvalidParameter("p_cap must be >= 1".into()));
        }
        if !(self.stability_tol > 0.0 && self.stability_tol <= 1e-4) {
            return Err(Error::InvalidParameter(format!(
                "stability_tol must lie in (0, 1e-4], got {}",
                self.stability_tol
            )));
        }
        if !(self.bessel_floor >= 0.0 && self.bessel_floor < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "bessel_floor must lie in [0, 1), got {}",
                self.bessel_floor
            )));
        }
        Ok(())
    }

    /// Starting cutoff: `ceil(|ν|/π) + 2` for the largest order `ν` in auto
    /// mode, otherwise `p_cap`.
    pub fn initial_p(&self, nu_max: Complex64) -> usize {
        if self.auto {
            (nu_max.norm() / PI).ceil() as usize + 2
        } else {
            self.p_cap
        }
    }
}
