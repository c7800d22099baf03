//! Direct quadrature of `∫₀^∞ t^{s-1} e^{-pt - q/t} dt`, which equals
//! `2 (q/p)^{s/2} K_s(2√(qp))`. Used as an independent check on the
//! Macdonald kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Trapezoid step in `u = ln t`.
const STEP: f64 = 1.0 / 128.0;
/// Integrand dropped once its log-modulus falls this far below the peak.
const DROP: f64 = 45.0;

/// `∫₀^∞ t^{s-1} e^{-pt - q/t} dt` for `p, q > 0`.
///
/// After `t = e^u` the integrand `exp(su - p e^u - q e^{-u})` decays
/// doubly exponentially in both directions and the plain trapezoid rule is
/// spectrally accurate. Intended for moderate `|s|`.
pub fn hobson_integral(s: Complex64, p: f64, q: f64) -> Result<Complex64> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::InvalidParameter(format!("p and q must be positive, got {p}, {q}")));
    }
    let expo = |u: f64| s * u - p * u.exp() - q * (-u).exp();
    // the real part of the exponent peaks where σ = p e^u - q e^{-u}
    let sigma = s.re;
    let peak_u = ((sigma + (sigma * sigma + 4.0 * p * q).sqrt()) / (2.0 * p)).ln();
    let peak = expo(peak_u).re;
    let mut acc = (expo(peak_u) - peak).exp();
    for dir in [1.0, -1.0] {
        let mut k = 1.0;
        loop {
            let u = peak_u + dir * k * STEP;
            let e = expo(u);
            if e.re - peak < -DROP {
                break;
            }
            acc += (e - peak).exp();
            k += 1.0;
        }
    }
    Ok(acc * STEP * peak.exp())
}
