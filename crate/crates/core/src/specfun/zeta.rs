//! Riemann zeta and the Catalan beta function `L_{-4}` by Euler–Maclaurin
//! summation, with the functional equations used left of `Re s = 0`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{ln_cos, ln_gamma, ln_sin};
use crate::error::{Error, Result};

/// `B_{2k} / (2k)!` for k = 1..=12.
const EM_COEFFS: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 5_654_578_718_862_235_278_950_400.0,
    -236_364_091.0 / 2_559_000_745_542_962_938_961_920_000.0,
];

fn direct_terms(s: Complex64) -> usize {
    // |s + 2k| / (2π N) must stay well below one over twelve corrections.
    20usize.max((0.5 * s.im.abs() + 0.25 * s.re.abs()).ceil() as usize)
}

/// Euler–Maclaurin tail for `Σ_{n>=N} (n+a)^{-s}` starting at `x = N + a`,
/// without the `x^{1-s}/(s-1)` term (handled by the callers).
fn em_tail(s: Complex64, x: f64) -> Complex64 {
    let lnx = x.ln();
    let x_ms = (-s * lnx).exp();
    let mut acc = x_ms * 0.5;
    // rising factorial (s)_{2k-1} and x^{-s-2k+1}
    let mut rising = s;
    let mut pow = x_ms / x;
    let inv_x2 = 1.0 / (x * x);
    for (k, &b) in EM_COEFFS.iter().enumerate() {
        let term = rising * pow * b;
        acc += term;
        if term.norm() < 1e-17 * acc.norm() {
            break;
        }
        let j = (2 * k + 1) as f64;
        rising *= (s + j) * (s + j + 1.0);
        pow *= inv_x2;
    }
    acc
}

fn zeta_em(s: Complex64) -> Complex64 {
    let n = direct_terms(s);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let x = n as f64;
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    sum + (one_minus_s * x.ln()).exp() / (s - 1.0) + em_tail(s, x)
}

/// Riemann zeta function.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole {
            function: "zeta",
            s,
        });
    }
    if s.re >= 0.0 {
        return Ok(zeta_em(s));
    }
    // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s), assembled in logs.
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let ln_pref = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin(s * (PI / 2.0)) + ln_gamma(one_minus_s)?;
    Ok(ln_pref.exp() * zeta_em(one_minus_s))
}

/// `(e^z - 1) / z`, accurate near zero.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..8 {
            term *= z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

fn beta_em(s: Complex64) -> Complex64 {
    let n = direct_terms(s);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let k = k as f64;
        sum += (-s * (k + 0.25).ln()).exp() - (-s * (k + 0.75).ln()).exp();
    }
    let lo = n as f64 + 0.25;
    let hi = n as f64 + 0.75;
    // [lo^{1-s} - hi^{1-s}] / (s-1), finite at s = 1.
    let z = Complex64::new(1.0, 0.0) - s;
    let ratio_ln = (lo / hi).ln();
    let integral = -(z * hi.ln()).exp() * ratio_ln * exprel(z * ratio_ln);
    let tail = em_tail(s, lo) - em_tail(s, hi);
    (sum + integral + tail) * (-s * 4f64.ln()).exp()
}

/// Dirichlet beta function `β(s) = Σ (-1)^k (2k+1)^{-s}` (Catalan beta, `L_{-4}`).
pub fn beta_catalan(s: Complex64) -> Complex64 {
    if s.re >= 0.0 {
        return beta_em(s);
    }
    // β(s) = (2/π)^{1-s} cos(πs/2) Γ(1-s) β(1-s)
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let lg = ln_gamma(one_minus_s).expect("Re(1-s) > 1 is never a pole");
    let ln_pref = one_minus_s * (2.0 / PI).ln() + ln_cos(s * (PI / 2.0)) + lg;
    ln_pref.exp() * beta_em(one_minus_s)
}

/// Completed zeta `ξ₀(s) = π^{-s/2} Γ(s/2) ζ(s)` in logarithmic form of the
/// prefactor: returns `(ln prefactor, ζ(s))`.
pub fn zeta_completion(s: Complex64) -> Result<(Complex64, Complex64)> {
    let ln_pref = -s * (0.5 * PI.ln()) + ln_gamma(s * 0.5)?;
    Ok((ln_pref, zeta(s)?))
}

/// Completed beta `Λ_β(s) = (4/π)^{(s+1)/2} Γ((s+1)/2) β(s)`, symmetric under
/// `s → 1 - s`: returns `(ln prefactor, β(s))`.
pub fn beta_completion(s: Complex64) -> Result<(Complex64, Complex64)> {
    let h = (s + 1.0) * 0.5;
    let ln_pref = h * (4.0 / PI).ln() + ln_gamma(h)?;
    Ok((ln_pref, beta_catalan(s)))
}
