//! Where the null lines of `Δ₃` meet the real axis.
//!
//! `Δ₃(σ)` is real, so the axis itself lies in the Im-null set. Other Re-null
//! lines cross it at zeros of `Δ₃(σ)`; other Im-null lines cross it where
//! `∂ Im Δ₃/∂t = dΔ₃/dσ` vanishes (Cauchy–Riemann).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::FieldKind;
use crate::angsum::{BesselCache, TruncationPolicy};
use crate::delta3::delta3_with;
use crate::error::{Error, Result};

/// Step of the central difference for `dΔ₃/dσ`.
const DIFF_H: f64 = 1e-4;
/// Fractional offset of the sampling grid, keeping nodes off integers and
/// half-integers where the lattice sums or `Γ(s)` cannot be evaluated.
const GRID_OFFSET: f64 = 0.3713;
const BISECT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisCrossing {
    pub sigma: f64,
    /// `ReDelta3`: zero of `Δ₃(σ)`; `ImDelta3`: stationary point of `Δ₃(σ)`.
    pub field: FieldKind,
}

fn value(m: u32, x: f64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<f64> {
    Ok(delta3_with(m, Complex64::new(x, 0.0), policy, cache)?.value.re)
}

fn slope(m: u32, x: f64, policy: &TruncationPolicy, cache: &BesselCache) -> Result<f64> {
    Ok((value(m, x + DIFF_H, policy, cache)? - value(m, x - DIFF_H, policy, cache)?) / (2.0 * DIFF_H))
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut fa: f64, mut b: f64) -> Result<f64> {
    while b - a > BISECT_TOL {
        let c = 0.5 * (a + b);
        let fc = f(c)?;
        if (fc < 0.0) == (fa < 0.0) {
            a = c;
            fa = fc;
        } else {
            b = c;
        }
    }
    Ok(0.5 * (a + b))
}

/// Real-axis crossings of the Re-null and Im-null lines of `Δ₃(2,2m;s)` on
/// `sigma_range`, located on a grid of spacing `step` and bisected.
/// Brackets containing a pole (`s = 0, …, 2m`) or a node that could not be
/// evaluated are skipped.
pub fn real_axis_crossings(
    m: u32,
    sigma_range: (f64, f64),
    step: f64,
    policy: &TruncationPolicy,
) -> Result<Vec<AxisCrossing>> {
    let (lo, hi) = sigma_range;
    if !(hi > lo && step > 0.0 && step <= 0.1) {
        return Err(Error::InvalidParameter(format!(
            "bad axis scan: range [{lo}, {hi}], step {step} (must be <= 0.1)"
        )));
    }
    let cache = BesselCache::with_capacity(4096);
    let n = ((hi - lo) / step).floor() as usize;
    let xs: Vec<f64> = (0..n).map(|i| lo + (i as f64 + GRID_OFFSET) * step).collect();
    let samples: Vec<Option<(f64, f64)>> = xs
        .iter()
        .map(|&x| match (value(m, x, policy, &cache), slope(m, x, policy, &cache)) {
            (Ok(v), Ok(d)) if v.is_finite() && d.is_finite() => Some((v, d)),
            _ => None,
        })
        .collect();
    let pole_between = |a: f64, b: f64| (0..=2 * m).any(|k| (k as f64) >= a && (k as f64) <= b);
    let mut out = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        let (a, b) = (xs[i], xs[i + 1]);
        let (Some((va, da)), Some((vb, db))) = (samples[i], samples[i + 1]) else {
            continue;
        };
        if pole_between(a, b) {
            continue;
        }
        if (va < 0.0) != (vb < 0.0) {
            let sigma = bisect(|x| value(m, x, policy, &cache), a, va, b)?;
            out.push(AxisCrossing {
                sigma,
                field: FieldKind::ReDelta3,
            });
        }
        if (da < 0.0) != (db < 0.0) {
            let sigma = bisect(|x| slope(m, x, policy, &cache), a, da, b)?;
            out.push(AxisCrossing {
                sigma,
                field: FieldKind::ImDelta3,
            });
        }
    }
    Ok(out)
}
