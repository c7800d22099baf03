//! Checks at factor zeros: neither `C̃` nor `S̃` vanishes on its own, and
//! simple zeros of `Δ₃` have nonzero derivative.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{Family, ZeroRecord};
use crate::angsum::{BesselCache, TruncationPolicy};
use crate::delta3::{delta3_derivative, factor_sums};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// Offsets in `t` at which the local scale is sampled.
const SCALE_OFFSETS: [f64; 4] = [-0.5, -0.25, 0.25, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorZeroCheck {
    pub t: f64,
    pub family: Family,
    /// `min(|C̃|, |S̃|)` at the zero over the largest `max(|C̃|, |S̃|)` nearby.
    pub tilde_ratio: f64,
    /// `|Δ₃'|` at the zero over the largest `|Δ₃|` nearby.
    pub derivative_ratio: f64,
}

/// `ln|Γ(s) π^{-s}|`, the common modulus of the `C̃`, `S̃` prefactor on the line
/// (`|F₂ₘ| = 1` there).
fn ln_pref(s: Complex64) -> Result<f64> {
    Ok((ln_gamma(s)? - s * PI.ln()).re)
}

/// Runs both checks at each zero of `C(0,1)` (or its factors) and `C(1,4m)`.
pub fn factor_zero_check(m: u32, zeros: &[ZeroRecord], policy: &TruncationPolicy) -> Result<Vec<FactorZeroCheck>> {
    if let Some(z) = zeros.iter().find(|z| !matches!(z.family, Family::Zeta | Family::Beta4 | Family::C01) && z.family != Family::C14m(m)) {
        return Err(Error::InvalidParameter(format!("zero of {} is not a factor of Δ₃ with m = {m}", z.family)));
    }
    zeros
        .par_iter()
        .map_init(
            || BesselCache::with_capacity(1024),
            |cache, z| {
                let s0 = Complex64::new(0.5, z.t);
                let lp0 = ln_pref(s0)?;
                // tilde magnitudes in units of |prefactor(s0)| / 2
                let tilde = |t: f64| -> Result<(f64, f64, f64)> {
                    let s = Complex64::new(0.5, t);
                    let (c0, c14) = factor_sums(m, s, policy, cache)?;
                    let w = (ln_pref(s)? - lp0).exp();
                    let (a, b) = ((c0 + c14).norm() * w, (c0 - c14).norm() * w);
                    // ln|Δ₃| = 2 ln|Γ π^{-s}| + ln|C0 C14|
                    let ln_delta = 2.0 * ln_pref(s)? + (c0 * c14).norm().ln();
                    Ok((a, b, ln_delta))
                };
                let (a0, b0, _) = tilde(z.t)?;
                let mut scale = a0.max(b0);
                let mut ln_delta_max = f64::NEG_INFINITY;
                for d in SCALE_OFFSETS {
                    let (a, b, ld) = tilde(z.t + d)?;
                    scale = scale.max(a.max(b));
                    ln_delta_max = ln_delta_max.max(ld);
                }
                let der = delta3_derivative(m, s0, policy, cache)?;
                let ln_der = der.log_scale + der.mantissa.norm().ln();
                Ok(FactorZeroCheck {
                    t: z.t,
                    family: z.family,
                    tilde_ratio: a0.min(b0) / scale,
                    derivative_ratio: (ln_der - ln_delta_max).exp(),
                })
            },
        )
        .collect()
}
