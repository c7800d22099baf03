//! Direct summation over the lattice square `0 < max(|p₁|,|p₂|) ≤ R`, used
//! as an independent oracle where the defining series converges absolutely.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::algebra::SumSpec;
use crate::error::{Error, Result};

/// Direct lattice sum plus tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceValue {
    pub value: Complex64,
    /// Integral estimate of everything outside the square, included in `value`.
    pub tail: Complex64,
    /// Bound on the error of `value`.
    pub error_bound: f64,
}

fn eval_poly(p: &[f64], c2: f64) -> f64 {
    // only even powers: p[2j] c^{2j}
    let mut acc = 0.0;
    let mut k = p.len() as isize - 1;
    if k % 2 == 1 {
        k -= 1;
    }
    while k >= 0 {
        acc = acc * c2 + p[k as usize];
        k -= 2;
    }
    acc
}

fn simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(a + i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

/// `Σ' P(cos θ)/(p₁²+p₂²)^s` over `max(|p₁|,|p₂|) ≤ radius`, with the region
/// outside the square (from `radius + ½`) replaced by its integral.
pub fn brute_force(spec: SumSpec, s: Complex64, radius: usize) -> Result<BruteForceValue> {
    if s.re < 1.5 {
        return Err(Error::Divergent(s.re));
    }
    if radius < 100 {
        return Err(Error::InvalidParameter(format!("radius must be >= 100, got {radius}")));
    }
    let poly: Vec<f64> = spec.polynomial()?.into_iter().map(|c| c as f64).collect();
    let rr = radius as i64;

    // Quadrant p₁, p₂ ≥ 0: every integrand is even in both coordinates.
    let mut acc = Complex64::new(0.0, 0.0);
    for p1 in 0..=rr {
        let mut row = Complex64::new(0.0, 0.0);
        for p2 in 0..=rr {
            if p1 == 0 && p2 == 0 {
                continue;
            }
            let r2 = (p1 * p1 + p2 * p2) as f64;
            let c2 = (p1 * p1) as f64 / r2;
            let f = eval_poly(&poly, c2);
            if f == 0.0 {
                continue;
            }
            let mult = if p1 == 0 || p2 == 0 { 2.0 } else { 4.0 };
            row += (-s * r2.ln()).exp() * (f * mult);
        }
        acc += row;
    }

    // ∫ f(θ) ρ(θ)^{2-2s} / (2s-2) dθ over the full circle, ρ = (R+½)/max(|cos|,|sin|)
    let edge = radius as f64 + 0.5;
    let two_s_m2 = s * 2.0 - 2.0;
    let integrand = |theta: f64, across: f64| {
        let c = theta.cos();
        let rho = edge / across;
        (-(two_s_m2) * rho.ln()).exp() * eval_poly(&poly, c * c)
    };
    let lower = simpson(|th| integrand(th, th.cos()), 0.0, PI / 4.0, 2048);
    let upper = simpson(|th| integrand(th, th.sin()), PI / 4.0, PI / 2.0, 2048);
    let tail = (lower + upper) * 4.0 / two_s_m2;

    // The shell sums approximate the area integral to relative O(|s|²/R²);
    // the integrand bound max|P| is at most the sum of |coefficients|.
    let pmax: f64 = poly.iter().map(|c| c.abs()).sum();
    let sig = s.re;
    let tail_scale = 2.0 * PI * pmax * edge.powf(2.0 - 2.0 * sig) / (2.0 * sig - 2.0);
    let error_bound = tail_scale * (1.0 + s.norm()).powi(2) / (edge * edge) + 1e-13 * acc.norm();
    Ok(BruteForceValue {
        value: acc + tail,
        tail,
        error_bound,
    })
}
