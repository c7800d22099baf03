//! Macdonald function `K_ν(x)` for complex order and positive real argument.
//!
//! We use `K_ν(x) = ½ ∫_{-∞}^{∞} exp(ν u − x cosh u) du` and move the contour
//! to `u = w + iθ(w)` with `sin θ = soft_min(|Im ν| / (x cosh w), 1)`. On that
//! path `Re(ν u − x cosh u)` is minimised over `θ` at every `w`, so the
//! integrand never exceeds the size of the result by more than a modest
//! factor even when `|Im ν| ≫ x` and `K_ν(x) ~ e^{-π|Im ν|/2}`. The
//! integrand is analytic in a strip around the path, so the trapezoid rule
//! converges geometrically; nested halving gives the error estimate.
//!
//! Orders `ν₀ + j` share the path (it only depends on `Im ν`), so a whole
//! ladder of integer-spaced orders costs little more than one order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Controls the trapezoid quadrature behind [`macdonald_k`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Hard ceiling on `|w|` along the contour.
    pub max_abscissa: f64,
    /// Panel count of the coarsest trapezoid level.
    pub nodes: usize,
    /// Relative change between successive halvings accepted as converged.
    pub target_rel_err: f64,
}

impl QuadratureSpec {
    pub fn new(max_abscissa: f64, nodes: usize, target_rel_err: f64) -> Result<Self> {
        if !(max_abscissa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "max_abscissa must be positive, got {max_abscissa}"
            )));
        }
        if nodes < 16 {
            return Err(Error::InvalidParameter(format!("nodes must be >= 16, got {nodes}")));
        }
        if !(target_rel_err > 0.0 && target_rel_err <= 1e-6) {
            return Err(Error::InvalidParameter(format!(
                "target_rel_err must lie in (0, 1e-6], got {target_rel_err}"
            )));
        }
        Ok(Self {
            max_abscissa,
            nodes,
            target_rel_err,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            max_abscissa: 40.0,
            nodes: 32,
            target_rel_err: 1e-13,
        }
    }
}

/// Exponent of the path softening; larger hugs the ideal path more tightly
/// at the cost of a sharper bend. Scaled with `|Im ν|^{2/3}` so that the
/// integrand excess over the plateau `e^{-π|Im ν|/2}` stays O(1).
const MIN_SOFTNESS: f64 = 6.0;
const SOFTNESS_GAIN: f64 = 1.0;
/// Integrand is dropped where it is below `e^{-TAIL_DROP}` of its maximum.
const TAIL_DROP: f64 = 42.0;
const SCAN_STEP: f64 = 0.125;
const MAX_LEVELS: usize = 14;

/// A ladder of Macdonald values `K_{ν₀+j}(x) = values[j] · e^{log_scale[j]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KLadder {
    pub values: Vec<Complex64>,
    pub log_scale: Vec<f64>,
    /// Achieved relative error estimate (worst over the ladder).
    pub error_estimate: f64,
    /// Total integrand evaluations.
    pub nodes: usize,
}

impl KLadder {
    pub fn get(&self, j: usize) -> Complex64 {
        self.values[j] * self.log_scale[j].exp()
    }
}

#[derive(Clone, Copy)]
struct PathPoint {
    u: Complex64,
    du: Complex64,
    cosh_u: Complex64,
}

struct Contour {
    beta: f64,
    sign: f64,
    x: f64,
    p: f64,
}

impl Contour {
    fn at(&self, w: f64) -> PathPoint {
        let (sw, cw) = (w.sinh(), w.cosh());
        if self.beta == 0.0 {
            return PathPoint {
                u: Complex64::new(w, 0.0),
                du: Complex64::new(1.0, 0.0),
                cosh_u: Complex64::new(cw, 0.0),
            };
        }
        let r = self.beta / (self.x * cw);
        let p = self.p;
        // sin θ = r (1 + r^p)^{-1/p}; written in terms of q = min(r, 1/r)^p
        // so that neither branch overflows.
        let (sin_t, cos_t, inv_1p_rp) = if r <= 1.0 {
            let q = r.powf(p);
            let sin_t = r * (-(1.0 / p) * q.ln_1p()).exp();
            (sin_t, (1.0 - sin_t * sin_t).sqrt(), 1.0 / (1.0 + q))
        } else {
            let q = r.powf(-p);
            let shrink = (-(1.0 / p) * q.ln_1p()).exp();
            // 1 - sin²θ = expm1((2/p) ln1p(q)) · sin²θ, free of cancellation near θ = π/2.
            let cos_t = shrink * ((2.0 / p) * q.ln_1p()).exp_m1().sqrt();
            (shrink, cos_t, q / (1.0 + q))
        };
        let theta = self.sign * sin_t.atan2(cos_t);
        // d(sin θ)/dw = -tanh w · sin θ / (1 + r^p)
        let dsin_dw = -w.tanh() * sin_t * inv_1p_rp;
        let dtheta = if cos_t > 0.0 { self.sign * dsin_dw / cos_t } else { 0.0 };
        PathPoint {
            u: Complex64::new(w, theta),
            du: Complex64::new(1.0, dtheta),
            cosh_u: Complex64::new(cw * cos_t, sw * self.sign * sin_t),
        }
    }
}

/// `K_ν(x)` for complex `ν` and `x > 0`.
pub fn macdonald_k(nu: Complex64, x: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    Ok(macdonald_ladder(nu, x, 1, spec)?.get(0))
}

/// `K_{ν₀+j}(x)` for `j = 0..count`, on a single shared contour.
pub fn macdonald_ladder(nu0: Complex64, x: f64, count: usize, spec: &QuadratureSpec) -> Result<KLadder> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    if count == 0 {
        return Ok(KLadder {
            values: vec![],
            log_scale: vec![],
            error_estimate: 0.0,
            nodes: 0,
        });
    }
    let contour = Contour {
        beta: nu0.im.abs(),
        sign: if nu0.im < 0.0 { -1.0 } else { 1.0 },
        x,
        p: MIN_SOFTNESS.max(SOFTNESS_GAIN * nu0.im.abs().powf(2.0 / 3.0)),
    };
    let top = (count - 1) as f64;
    let exponent = |p: &PathPoint| nu0 * p.u - p.cosh_u * x;

    // Locate the window where the integrand matters for both ends of the ladder.
    let plateau = (contour.beta / x).max(1.0).acosh();
    let mut ref_lo = f64::NEG_INFINITY;
    let mut ref_hi = f64::NEG_INFINITY;
    let mut bounds = [0.0f64; 2];
    for (side, dir) in [1.0f64, -1.0].into_iter().enumerate() {
        let mut w = 0.0;
        let mut last_live = 0.0;
        loop {
            let re = exponent(&contour.at(w)).re;
            let (lo, hi) = (re, re + top * w);
            ref_lo = ref_lo.max(lo);
            ref_hi = ref_hi.max(hi);
            if lo > ref_lo - TAIL_DROP || hi > ref_hi - TAIL_DROP {
                last_live = w;
            } else if w.abs() > plateau {
                break;
            }
            if w.abs() >= spec.max_abscissa {
                break;
            }
            w += dir * SCAN_STEP;
        }
        bounds[side] = last_live + dir * SCAN_STEP;
    }
    let (a, b) = (bounds[1], bounds[0]);
    let refs: Vec<f64> = (0..count)
        .map(|j| {
            let t = j as f64 / top.max(1.0);
            ref_lo + t * (ref_hi - ref_lo)
        })
        .collect();

    let eval = |w: f64, acc: &mut [Complex64], l1: &mut [f64]| {
        let p = contour.at(w);
        let e0 = exponent(&p);
        let base_mag = e0.re - refs[0];
        if base_mag > -600.0 && top * p.u.re.abs() < 600.0 {
            let mut g = (e0 - refs[0]).exp() * p.du;
            let step = p.u.exp();
            for j in 0..count {
                let v = g * (refs[0] - refs[j]).exp();
                acc[j] += v;
                l1[j] += v.norm();
                g *= step;
            }
        } else {
            for j in 0..count {
                let v = (e0 + p.u * j as f64 - refs[j]).exp() * p.du;
                acc[j] += v;
                l1[j] += v.norm();
            }
        }
    };

    let mut n = spec.nodes.max(16);
    let mut h = (b - a) / n as f64;
    let mut sum = vec![Complex64::new(0.0, 0.0); count];
    let mut l1 = vec![0.0; count];
    for i in 0..=n {
        let w = a + i as f64 * h;
        let wt = if i == 0 || i == n { 0.5 } else { 1.0 };
        let mut tmp = vec![Complex64::new(0.0, 0.0); count];
        let mut tl = vec![0.0; count];
        eval(w, &mut tmp, &mut tl);
        for j in 0..count {
            sum[j] += tmp[j] * wt;
            l1[j] += tl[j] * wt;
        }
    }
    let mut estimate: Vec<Complex64> = sum.iter().map(|v| v * h).collect();
    let mut nodes = n + 1;
    let mut worst = f64::INFINITY;
    for level in 0..MAX_LEVELS {
        let mut mid = vec![Complex64::new(0.0, 0.0); count];
        let mut mid_l1 = vec![0.0; count];
        for i in 0..n {
            eval(a + (i as f64 + 0.5) * h, &mut mid, &mut mid_l1);
        }
        nodes += n;
        for j in 0..count {
            sum[j] += mid[j];
            l1[j] += mid_l1[j];
        }
        n *= 2;
        h *= 0.5;
        let refined: Vec<Complex64> = sum.iter().map(|v| v * h).collect();
        worst = 0.0;
        for j in 0..count {
            // near a zero of K (real ν, x below |ν|) the sum cancels and only
            // an error relative to the absolute integrand mass is meaningful
            let scale = refined[j].norm().max(1e-2 * l1[j] * h);
            worst = worst.max((refined[j] - estimate[j]).norm() / scale);
        }
        estimate = refined;
        if level >= 1 && worst <= spec.target_rel_err {
            return Ok(KLadder {
                values: estimate.iter().map(|v| v * 0.5).collect(),
                log_scale: refs,
                error_estimate: worst,
                nodes,
            });
        }
    }
    Err(Error::QuadratureNonConvergence {
        achieved: worst,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Real-axis trapezoid on `∫₀^∞ e^{-x cosh u} cosh(νu) du` with a fixed
    /// fine grid; independent of the deformed contour. Only usable where
    /// `|Im ν|` is small enough that no cancellation occurs.
    fn real_axis_oracle(nu: Complex64, x: f64) -> Complex64 {
        let h = 1.0 / 512.0;
        let mut acc = c(0.0, 0.0);
        let mut u: f64 = 0.0;
        let mut first = true;
        while u < 12.0 {
            let v = (-x * u.cosh()).exp() * (nu * u).cosh();
            acc += if first { v * 0.5 } else { v };
            first = false;
            u += h;
        }
        acc * h
    }

    #[test]
    fn half_order_closed_form() {
        let spec = QuadratureSpec::default();
        let k = macdonald_k(c(0.5, 0.0), 3.0, &spec).unwrap();
        let exact = (PI / 6.0).sqrt() * (-3.0f64).exp();
        assert!((k.re - exact).abs() / exact < 1e-13);
        assert!(k.im.abs() < 1e-16);
    }

    #[test]
    fn order_zero_at_one() {
        let spec = QuadratureSpec::default();
        let k = macdonald_k(c(0.0, 0.0), 1.0, &spec).unwrap();
        let oracle = real_axis_oracle(c(0.0, 0.0), 1.0);
        assert!((k - oracle).norm() / oracle.norm() < 1e-13);
        assert!((k.re - 0.421_024_438_240_708_3).abs() < 1e-13);
    }

    #[test]
    fn modest_complex_order_against_real_axis() {
        let spec = QuadratureSpec::default();
        for &(a, b, x) in &[(0.3, 1.5, 2.0), (2.5, -3.0, 7.0), (-1.2, 4.0, 6.5)] {
            let nu = c(a, b);
            let k = macdonald_k(nu, x, &spec).unwrap();
            let o = real_axis_oracle(nu, x);
            assert!((k - o).norm() / o.norm() < 1e-11, "nu={nu} x={x} k={k} o={o}");
        }
    }

    #[test]
    fn nonpositive_argument() {
        let spec = QuadratureSpec::default();
        assert!(matches!(
            macdonald_k(c(1.0, 0.0), 0.0, &spec),
            Err(Error::NonPositiveArgument(_))
        ));
        assert!(macdonald_k(c(1.0, 0.0), -2.0, &spec).is_err());
    }

    #[test]
    fn order_reflection_and_conjugation() {
        let spec = QuadratureSpec::default();
        for &(a, b, x) in &[(0.7, 12.0, 6.3), (3.0, 150.0, 12.6), (-2.5, -40.0, 30.0)] {
            let nu = c(a, b);
            let k = macdonald_k(nu, x, &spec).unwrap();
            let kneg = macdonald_k(-nu, x, &spec).unwrap();
            let kconj = macdonald_k(nu.conj(), x, &spec).unwrap();
            assert!((k - kneg).norm() <= 1e-12 * k.norm(), "{nu}: {k} vs {kneg}");
            assert!((kconj - k.conj()).norm() <= 1e-12 * k.norm());
        }
    }

    #[test]
    fn ladder_obeys_three_term_recurrence() {
        let spec = QuadratureSpec::default();
        for &(a, b, x) in &[(0.0, 300.0, 2.0 * PI), (-0.5, 120.0, 4.0 * PI), (5.5, 20.0, 60.0)] {
            let nu = c(a, b);
            let lad = macdonald_ladder(nu, x, 6, &spec).unwrap();
            for j in 1..5 {
                let lhs = lad.get(j + 1) - lad.get(j - 1);
                let rhs = lad.get(j) * ((nu + j as f64) * 2.0 / x);
                assert!(
                    (lhs - rhs).norm() <= 1e-11 * rhs.norm().max(lad.get(j + 1).norm()),
                    "nu={nu} j={j} {lhs} {rhs}"
                );
            }
        }
    }

    #[test]
    fn large_argument_against_reference_ratios() {
        // K_ν(40) / (√(π/80) e^{-40}), reference values from a 40-digit evaluation.
        let spec = QuadratureSpec::default();
        let asym = (PI / 80.0).sqrt() * (-40.0f64).exp();
        let cases = [
            (c(5.0, 10.0), c(0.127_147_29, 0.375_037_87)),
            (c(15.0, 0.0), c(15.574_627, 0.0)),
            (c(0.0, 15.0), c(0.060_009_323, 0.0)),
            (c(1.0, 0.0), c(1.009_303_3, 0.0)),
            (c(2.0, 2.0), c(0.992_096_29, 0.098_321_769)),
        ];
        for (nu, expect) in cases {
            let ratio = macdonald_k(nu, 40.0, &spec).unwrap() / asym;
            assert!((ratio - expect).norm() < 2e-7 * expect.norm(), "nu={nu} ratio {ratio}");
        }
    }
}
