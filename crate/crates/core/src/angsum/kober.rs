//! The Kober-type expansion of `C(2n,1;s)`:
//!
//! `C(2n,1;s) = 2√π Γ(s+n-½) ζ(2s-1) / Γ(s+n)
//!            + 8πˢ/Γ(s+n) Σ_{p₁,p₂≥1} (p₂/p₁)^{s-½} (πp₁p₂)ⁿ K_{s+n-½}(2πp₁p₂)`
//!
//! and `C(0,1;s)`, which carries the extra axis term `2ζ(2s)`. Terms are
//! grouped by `k = p₁p₂`; a single Macdonald ladder per `k` serves every
//! order `n` requested at the same `s`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::cache::BesselCache;
use super::policy::TruncationPolicy;
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, zeta};

/// A lattice-sum value with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumValue {
    pub value: Complex64,
    /// Relative change seen by the stability test plus the quadrature error.
    pub error_estimate: f64,
    /// Cutoff `P` actually used.
    pub p_used: usize,
    /// Within 1e-3 of `s = 1` or `s = ½`.
    pub near_pole: bool,
}

pub(crate) const NEAR_POLE: f64 = 1e-3;

pub(crate) fn near_pole(s: Complex64) -> bool {
    (s - 1.0).norm() < NEAR_POLE || (s - 0.5).norm() < NEAR_POLE
}

/// `ln(1/Γ(z))`, or `None` where `1/Γ` vanishes.
fn ln_rgamma(z: Complex64) -> Result<Option<Complex64>> {
    match ln_gamma(z) {
        Ok(v) => Ok(Some(-v)),
        Err(Error::Pole { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `C(2n,1;s)` for each `n` in `orders`, sharing one truncation.
pub(crate) fn kober_orders(
    s: Complex64,
    orders: &[u32],
    policy: &TruncationPolicy,
    cache: &BesselCache,
) -> Result<(Vec<Complex64>, f64, usize)> {
    policy.validate()?;
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole { function: "C(2n,1)", s });
    }
    if orders.is_empty() {
        return Ok((vec![], 0.0, 0));
    }
    let n_lo = *orders.iter().min().unwrap();
    let n_hi = *orders.iter().max().unwrap();
    let count = (n_hi - n_lo + 1) as usize;
    let nu0 = s - 0.5 + n_lo as f64;
    let nu_max = nu0 + (count - 1) as f64;

    // Per-order prefactor ln(8 πˢ / Γ(s+n)); None where 1/Γ(s+n) = 0.
    let ln_pi = PI.ln();
    let mut ln_pref = Vec::with_capacity(count);
    for j in 0..count {
        let n = (n_lo as usize + j) as f64;
        ln_pref.push(ln_rgamma(s + n)?.map(|r| r + 8f64.ln() + s * ln_pi));
    }

    // Ladder terms T[k-1][j] = 8πˢ/Γ(s+n) (πk)ⁿ K_{ν₀+j}(2πk), cut where negligible.
    let sigma_h = s.re - 0.5;
    let k_turn = nu_max.norm() / (2.0 * PI);
    let mut terms: Vec<Vec<Complex64>> = Vec::new();
    let mut largest = 0.0f64;
    let mut quiet = 0;
    let mut quad_err = 0.0f64;
    let k_hard = 1usize << 20;
    let mut k = 1usize;
    loop {
        let x = 2.0 * PI * k as f64;
        let lad = cache.ladder(nu0, x, count, &policy.quadrature)?;
        quad_err = quad_err.max(lad.error_estimate);
        let ln_pik = (PI * k as f64).ln();
        let mut row = Vec::with_capacity(count);
        let mut mag = 0.0f64;
        for j in 0..count {
            let v = match ln_pref[j] {
                Some(lp) => {
                    let n = (n_lo as usize + j) as f64;
                    let e = lp + n * ln_pik + lad.log_scale[j];
                    lad.values[j] * e.exp()
                }
                None => Complex64::new(0.0, 0.0),
            };
            mag = mag.max(v.norm());
            row.push(v);
        }
        // bound on |Σ_{d|k} (k/d²)^{s-½}|
        let kf = k as f64;
        let mut dsum = 0.0;
        let mut d = 1usize;
        while d * d <= k {
            if k % d == 0 {
                let df = d as f64;
                dsum += (kf / (df * df)).powf(sigma_h);
                if d * d != k {
                    dsum += (df * df / kf).powf(sigma_h);
                }
            }
            d += 1;
        }
        let bound = mag * dsum;
        largest = largest.max(bound);
        terms.push(row);
        if kf > k_turn && bound <= policy.bessel_floor * largest {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1;
        if k > k_hard {
            return Err(Error::TruncationNonConvergence {
                p_cap: k_hard,
                change: f64::NAN,
            });
        }
    }
    let k_max = terms.len();

    // (p)^{s-½} and (p)^{-(s-½)} for p ≤ k_max
    let h = s - 0.5;
    let pw: Vec<Complex64> = (0..=k_max).map(|p| if p == 0 { Complex64::new(0.0, 0.0) } else { (h * (p as f64).ln()).exp() }).collect();
    let ipw: Vec<Complex64> = pw.iter().map(|v| if v.norm() == 0.0 { *v } else { v.inv() }).collect();

    let double_sum = |p: usize| -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(0.0, 0.0); count];
        let lim = p.min(k_max);
        for p1 in 1..=lim {
            let p2_max = lim.min(k_max / p1);
            for p2 in 1..=p2_max {
                let w = pw[p2] * ipw[p1];
                let row = &terms[p1 * p2 - 1];
                for j in 0..count {
                    acc[j] += w * row[j];
                }
            }
        }
        acc
    };
    let rel_change = |a: &[Complex64], b: &[Complex64]| -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let sc = x.norm().max(y.norm());
                if sc == 0.0 { 0.0 } else { (x - y).norm() / sc }
            })
            .fold(0.0, f64::max)
    };

    let mut p = policy.initial_p(nu_max);
    let mut cur = double_sum(p);
    let mut change;
    if policy.auto {
        let mut doublings = 0;
        loop {
            let next = double_sum(2 * p);
            change = rel_change(&cur, &next);
            p *= 2;
            cur = next;
            if change <= policy.stability_tol {
                break;
            }
            doublings += 1;
            if doublings >= TruncationPolicy::MAX_DOUBLINGS {
                return Err(Error::TruncationNonConvergence { p_cap: p, change });
            }
        }
    } else {
        let next = double_sum(p + 2);
        change = rel_change(&cur, &next);
        if change > policy.stability_tol {
            return Err(Error::TruncationNonConvergence { p_cap: p, change });
        }
    }

    // axial terms
    let z2 = zeta(s * 2.0 - 1.0)?;
    let mut out = Vec::with_capacity(orders.len());
    for &n in orders {
        let j = (n - n_lo) as usize;
        let nf = n as f64;
        let axial = match ln_pref[j] {
            Some(_) => {
                let lg = ln_gamma(s + nf - 0.5)?;
                let lr = ln_rgamma(s + nf)?.unwrap();
                (2f64.ln() + 0.5 * ln_pi + lg + lr).exp() * z2
            }
            None => Complex64::new(0.0, 0.0),
        };
        let mut v = axial + cur[j];
        if n == 0 {
            v += zeta(s * 2.0)? * 2.0;
        }
        out.push(v);
    }
    Ok((out, change + quad_err, p))
}

fn single(s: Complex64, n: u32, policy: &TruncationPolicy, cache: Option<&BesselCache>) -> Result<SumValue> {
    let local;
    let cache = match cache {
        Some(c) => c,
        None => {
            local = BesselCache::default();
            &local
        }
    };
    let (v, err, p) = kober_orders(s, &[n], policy, cache)?;
    Ok(SumValue {
        value: v[0],
        error_estimate: err,
        p_used: p,
        near_pole: near_pole(s),
    })
}

/// `C(2n,1;s)` for `n ≥ 1`.
pub fn c2n1(n: u32, s: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(c2n1_with(n, s, policy, None)?.value)
}

pub fn c2n1_with(n: u32, s: Complex64, policy: &TruncationPolicy, cache: Option<&BesselCache>) -> Result<SumValue> {
    if n == 0 {
        return Err(Error::InvalidParameter("c2n1 needs n >= 1; use c01 for n = 0".into()));
    }
    single(s, n, policy, cache)
}

/// `C(0,1;s)` from the Kober expansion with both axis contributions.
pub fn c01(s: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(c01_with(s, policy, None)?.value)
}

pub fn c01_with(s: Complex64, policy: &TruncationPolicy, cache: Option<&BesselCache>) -> Result<SumValue> {
    if (s - 0.5).norm() == 0.0 {
        return Err(Error::Pole { function: "C(0,1) Kober terms", s });
    }
    single(s, 0, policy, cache)
}

/// `C(0,1;s) = 4 ζ(s) β(s)`.
pub fn c01_product(s: Complex64) -> Result<Complex64> {
    Ok(crate::specfun::zeta(s)? * crate::specfun::beta_catalan(s) * 4.0)
}
