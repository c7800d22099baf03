//! Large-`σ` form of `Δ₃(2,2;s)` and the hyperbolic phase structure near
//! critical-line maxima of `|Δ₃|`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::delta3_with;
use crate::angsum::{BesselCache, TruncationPolicy};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeSigma {
    /// Prefactor times `1 + 4^{-s} + 36·5^{-2s-2}`.
    pub full: Complex64,
    /// `16 Γ(1-s) Γ(s+2) Γ(s) / (Γ(3-s) π^{2s})`.
    pub prefactor: Complex64,
    /// Stirling form of `arg prefactor`, see [`stirling_phase`].
    pub phase: f64,
}

/// `Im[2s ln(s/π) - 2s - ln s + 25/(6s) + 2/s²]`.
pub fn stirling_phase(s: Complex64) -> f64 {
    (s * 2.0 * (s / PI).ln() - s * 2.0 - s.ln() + s.inv() * (25.0 / 6.0) + (s * s).inv() * 2.0).im
}

/// Leading lattice terms of `Δ₃(2,2;s)` for large `Re s`.
pub fn large_sigma_approx(s: Complex64) -> Result<LargeSigma> {
    if s.re < 3.5 {
        return Err(Error::InvalidParameter(format!(
            "large-sigma form needs Re s >= 3.5, got {}",
            s.re
        )));
    }
    // Γ(1-s)/Γ(3-s) = 1/((1-s)(2-s)), which stays finite at integer s.
    let one = Complex64::new(1.0, 0.0);
    let lg = ln_gamma(s + 2.0)? + ln_gamma(s)? - s * (2.0 * PI.ln());
    let prefactor = lg.exp() * 16.0 / ((one - s) * (-s + 2.0));
    let tail = one + (-s * 4f64.ln()).exp() + (-(s * 2.0 + 2.0) * 5f64.ln()).exp() * 36.0;
    Ok(LargeSigma {
        full: prefactor * tail,
        prefactor,
        phase: stirling_phase(s),
    })
}

fn ln_abs_line(m: u32, t: f64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<f64> {
    Ok(delta3_with(m, Complex64::new(0.5, t), policy, cache)?.ln_abs())
}

/// Maximum of `ln|Δ₃(½+it)|` on `(t_lo, t_hi)` by golden section; between two
/// consecutive zeros this is where `∂ arg Δ₃/∂σ = 0` on the line.
pub fn line_log_abs_maximum(m: u32, t_lo: f64, t_hi: f64, policy: &TruncationPolicy) -> Result<f64> {
    if !(t_hi > t_lo) {
        return Err(Error::InvalidParameter(format!("empty interval [{t_lo}, {t_hi}]")));
    }
    let cache = BesselCache::default();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (t_lo, t_hi);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = ln_abs_line(m, x1, policy, &cache)?;
    let mut f2 = ln_abs_line(m, x2, policy, &cache)?;
    while b - a > 1e-9 * t_hi.abs().max(1.0) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = ln_abs_line(m, x2, policy, &cache)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = ln_abs_line(m, x1, policy, &cache)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Step for the second `t`-derivative of `ln|Δ₃|`.
const SECOND_DIFF_H: f64 = 1e-3;

/// Centre `(σ, t)` of the rectangular hyperbolae of constant phase about
/// `s* = ½ + i t_star`, where `t_star` maximises `|Δ₃|` on the line.
pub fn hyperbola_center(m: u32, t_star: f64, policy: &TruncationPolicy) -> Result<(f64, f64)> {
    let cache = BesselCache::default();
    let f = |t: f64| ln_abs_line(m, t, policy, &cache);
    // Richardson on the central second difference.
    let d2 = |h: f64| -> Result<f64> { Ok((f(t_star + h)? - 2.0 * f(t_star)? + f(t_star - h)?) / (h * h)) };
    let a = d2(SECOND_DIFF_H)?;
    let b = d2(SECOND_DIFF_H / 2.0)?;
    let lpp = b + (b - a) / 3.0;
    if !lpp.is_finite() || (a - b).abs() > 1e-3 * lpp.abs().max(1.0) {
        return Err(Error::DerivativeFailure(format!(
            "second derivative of ln|Δ₃| unstable at t = {t_star}: {a} vs {b}"
        )));
    }
    let mf = m as f64;
    let denom = 0.25 * lpp * lpp + 4.0 * mf.powi(4) / t_star.powi(6);
    let sigma = 0.5 + (mf * mf / (2.0 * t_star * t_star)) * lpp / denom;
    let t = t_star + (2.0 * mf.powi(4) / t_star.powi(5)) / denom;
    Ok((sigma, t))
}
