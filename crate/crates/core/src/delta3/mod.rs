//! `Δ₃(2,2m;s) = Γ(s)² π^{-2s} F₂ₘ(s)^{-1} C(0,1;s) C(1,4m;s)` and the
//! quantities built around it.
//!
//! `|Γ(s)|²` falls like `e^{-π|t|}` and underflows near `t ≈ 230`, so values
//! are carried as `mantissa · e^{log_scale}` and only multiplied out on request.

mod asymptotic;
mod phase;

pub use asymptotic::{hyperbola_center, large_sigma_approx, line_log_abs_maximum, stirling_phase, LargeSigma};
pub use phase::{f2m, f2m_inv, phi2m, phi2m_complex, phi2m_prime, Branch, PhaseState};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::angsum::{BesselCache, Generators, TruncationPolicy};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// Distance below which a point counts as sitting on a pole.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Delta3Value {
    /// `Δ₃(s)`; may underflow to zero for large `|t|`, see `mantissa`.
    pub value: Complex64,
    pub mantissa: Complex64,
    pub log_scale: f64,
    pub m: u32,
    pub s: Complex64,
    pub near_pole: bool,
}

impl Delta3Value {
    /// `Δ₃(s) · e^{-reference}`.
    pub fn scaled(&self, reference: f64) -> Complex64 {
        self.mantissa * (self.log_scale - reference).exp()
    }

    /// `ln |Δ₃(s)|`.
    pub fn ln_abs(&self) -> f64 {
        self.log_scale + self.mantissa.norm().ln()
    }
}

fn pole_distance(m: u32, s: Complex64) -> f64 {
    (0..=2 * m)
        .map(|k| (s - k as f64).norm())
        .fold(f64::INFINITY, f64::min)
}

/// `C(0,1;s)` and `C(1,4m;s)` from one generator evaluation.
pub fn factor_sums(m: u32, s: Complex64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<(Complex64, Complex64)> {
    let g = Generators::eval(s, m, policy, cache)?;
    Ok((g.values[0], g.c14m(m)?))
}

pub fn delta3(m: u32, s: Complex64, policy: &TruncationPolicy) -> Result<Delta3Value> {
    delta3_with(m, s, policy, &BesselCache::default())
}

pub fn delta3_with(m: u32, s: Complex64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<Delta3Value> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let inv_f = f2m_inv(m, s)?;
    let (c0, c14) = factor_sums(m, s, policy, cache)?;
    let ln_pref = ln_gamma(s)? * 2.0 - s * (2.0 * PI.ln());
    let mantissa = Complex64::new(0.0, ln_pref.im).exp() * c0 * c14 * inv_f;
    let log_scale = ln_pref.re;
    Ok(Delta3Value {
        value: mantissa * log_scale.exp(),
        mantissa,
        log_scale,
        m,
        s,
        near_pole: pole_distance(m, s) < POLE_GUARD,
    })
}

/// The rescaled sums `C̃(2,2m;s)` and `S̃(2,2m;s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TildeParts {
    pub c: Complex64,
    pub s: Complex64,
    /// Within `1e-6` of the cut where `F₂ₘ` is real and negative.
    pub near_cut: bool,
}

pub fn delta3_tilde_parts(m: u32, s: Complex64, policy: &TruncationPolicy) -> Result<TildeParts> {
    delta3_tilde_parts_with(m, s, policy, &BesselCache::default())
}

pub fn delta3_tilde_parts_with(m: u32, s: Complex64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<TildeParts> {
    let ps = PhaseState::new(m, s)?;
    let (c0, c14) = factor_sums(m, s, policy, cache)?;
    let pref = (ln_gamma(s)? - s * PI.ln()).exp() / (ps.sqrt_f * 2.0);
    Ok(TildeParts {
        c: pref * (c0 + c14),
        s: pref * (c0 - c14),
        near_cut: ps.near_cut(POLE_GUARD),
    })
}

/// `ln G₄ₘ(s) prefactor` and `C(1,4m;s)` (`C(0,1;s)` for `m = 0`).
fn g4m_parts(m: u32, s: Complex64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<(Complex64, Complex64)> {
    let g = Generators::eval(s, m, policy, cache)?;
    let c = if m == 0 { g.values[0] } else { g.c14m(m)? };
    Ok((ln_gamma(s + 2.0 * m as f64)? - s * PI.ln(), c))
}

fn rel_diff_logs(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    // |A e^{a} - B e^{b}| / |A e^{a}|
    let (la, va) = a;
    let (lb, vb) = b;
    let ratio = (lb - la).exp() * vb;
    (va - ratio).norm() / va.norm()
}

/// Largest of `|G₄ₘ(s) - G₄ₘ(1-s)| / |G₄ₘ(s)|` and, for `m ≥ 1`,
/// `|Δ₃(s) - F₂ₘ(1-s) Δ₃(1-s)| / |Δ₃(s)|`.
pub fn functional_residual(m: u32, s: Complex64, policy: &TruncationPolicy) -> Result<f64> {
    let cache = BesselCache::default();
    let one = Complex64::new(1.0, 0.0);
    let g = rel_diff_logs(g4m_parts(m, s, policy, &cache)?, g4m_parts(m, one - s, policy, &cache)?);
    if m == 0 {
        return Ok(g);
    }
    let a = delta3_with(m, s, policy, &cache)?;
    let b = delta3_with(m, one - s, policy, &cache)?;
    let fb = f2m(m, one - s)?;
    let d = rel_diff_logs(
        (Complex64::new(a.log_scale, 0.0), a.mantissa),
        (Complex64::new(b.log_scale, 0.0), b.mantissa * fb),
    );
    Ok(g.max(d))
}

/// Richardson settings for the derivative along `σ`.
pub const DERIV_H0: f64 = 1e-3;
pub const DERIV_LEVELS: usize = 3;

/// `dΔ₃/ds` as `mantissa · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledDerivative {
    pub mantissa: Complex64,
    pub log_scale: f64,
    /// Relative gap between the last two Richardson columns.
    pub consistency: f64,
}

impl ScaledDerivative {
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }
}

/// Richardson-extrapolated central differences of `f` along the real direction.
fn richardson<F>(f: F, s: Complex64, h0: f64, levels: usize) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(levels);
    let mut h = h0;
    for i in 0..levels {
        if h < 1e-10 * s.norm().max(1.0) {
            return Err(Error::StepUnderflow(h));
        }
        let d = (f(s + h)? - f(s - h)?) / (2.0 * h);
        let mut row = vec![d];
        for j in 1..=i {
            let prev = table[i - 1][j - 1];
            let cur = row[j - 1];
            row.push(cur + (cur - prev) / (4f64.powi(j as i32) - 1.0));
        }
        table.push(row);
        h *= 0.5;
    }
    let last = &table[levels - 1];
    let best = last[levels - 1];
    let prev = if levels >= 2 { last[levels - 2] } else { best };
    let consistency = if best.norm() > 0.0 { (best - prev).norm() / best.norm() } else { 0.0 };
    Ok((best, consistency))
}

/// `Δ₃'(s)`, scaled by the log-magnitude at `s` so that it never underflows.
pub fn delta3_derivative(m: u32, s: Complex64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<ScaledDerivative> {
    let reference = (ln_gamma(s)? * 2.0 - s * (2.0 * PI.ln())).re;
    let f = |z: Complex64| delta3_with(m, z, policy, cache).map(|v| v.scaled(reference));
    let (d, consistency) = richardson(f, s, DERIV_H0, DERIV_LEVELS)?;
    Ok(ScaledDerivative {
        mantissa: d,
        log_scale: reference,
        consistency,
    })
}

/// `Δ₃'(½ + it)`.
pub fn delta3_prime_line(m: u32, t: f64, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(delta3_derivative(m, Complex64::new(0.5, t), policy, &BesselCache::default())?.value())
}

/// Laurent settings for the pole fits.
pub const LAURENT_RADIUS: f64 = 1e-2;
pub const LAURENT_NODES: usize = 64;

/// Coefficient `c_{-k}` of `Δ₃` about `s0` from a discrete Cauchy integral.
pub fn laurent_coefficient(m: u32, s0: Complex64, k: i32, policy: &TruncationPolicy) -> Result<Complex64> {
    let cache = BesselCache::default();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..LAURENT_NODES {
        // half-step offset keeps nodes off the real axis
        let theta = 2.0 * PI * (j as f64 + 0.5) / LAURENT_NODES as f64;
        let z = Complex64::from_polar(LAURENT_RADIUS, theta);
        let v = delta3_with(m, s0 + z, policy, &cache)?;
        acc += v.value * z.powi(k);
    }
    Ok(acc / LAURENT_NODES as f64)
}

#[cfg(test)]
mod tests;
