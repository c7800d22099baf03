//! Complex log-Gamma.
//!
//! Stirling's series on the shifted argument `s + N` (so that `Re >= 10`),
//! brought back with the recurrence `ln Γ(s) = ln Γ(s+N) − Σ ln(s+j)`.
//! Summing principal logarithms keeps the result on the standard
//! `loggamma` branch, which is continuous off the negative real axis.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k-1))` for k = 1..=13.
const STIRLING: [f64; 13] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77_683.0 / 5_796.0,
    -236_364_091.0 / 1_506_960.0,
    657_931.0 / 300.0,
];

/// Real part beyond which the shifted Stirling series is used unchanged.
const STIRLING_MIN_RE: f64 = 10.0;

/// Left of this the reflection formula replaces the long upward recurrence.
const REFLECT_BELOW_RE: f64 = -40.0;

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        let term = pow * c;
        series += term;
        if term.norm() < 1e-18 * series.norm() {
            break;
        }
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// `ln Γ(s)` for complex `s`.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::Pole {
            function: "ln_gamma",
            s,
        });
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("ln_gamma of non-finite {s}")));
    }
    if s.re < REFLECT_BELOW_RE {
        let one = Complex64::new(1.0, 0.0);
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin(s * PI) - ln_gamma(one - s)?);
    }
    if s.re >= STIRLING_MIN_RE {
        return Ok(stirling(s));
    }
    let shift = (STIRLING_MIN_RE - s.re).ceil() as usize;
    let mut correction = Complex64::new(0.0, 0.0);
    for j in 0..shift {
        correction += (s + j as f64).ln();
    }
    Ok(stirling(s + shift as f64) - correction)
}

/// `Γ(s)`; overflows to infinity where `|Γ|` exceeds the f64 range.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(s)?.exp())
}

/// Logarithm of `sin z`, stable for large `|Im z|`.
pub fn ln_sin(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let ln_2i = Complex64::new(2f64.ln(), PI / 2.0);
    if z.im > 1.0 {
        // sin z = -e^{-iz} (1 - e^{2iz}) / (2i)
        let q = (2.0 * i * z).exp();
        -i * z + (Complex64::new(1.0, 0.0) - q).ln() - ln_2i + Complex64::new(0.0, PI)
    } else if z.im < -1.0 {
        // sin z = e^{iz} (1 - e^{-2iz}) / (2i)
        let q = (-2.0 * i * z).exp();
        i * z + (Complex64::new(1.0, 0.0) - q).ln() - ln_2i
    } else {
        z.sin().ln()
    }
}

/// Logarithm of `cos z`, stable for large `|Im z|`.
pub fn ln_cos(z: Complex64) -> Complex64 {
    ln_sin(z + PI / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt().ln()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
        let four = ln_gamma(c(4.0, 0.0)).unwrap();
        assert!((four.re - 6f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn poles_are_errors() {
        for k in 0..5 {
            assert!(matches!(
                ln_gamma(c(-(k as f64), 0.0)),
                Err(Error::Pole { .. })
            ));
        }
        assert!(ln_gamma(c(-2.0, 1e-9)).is_ok());
    }

    #[test]
    fn known_complex_value() {
        // Γ(4+10i) as quoted in the apc crate's own tests.
        let g = gamma(c(4.0, 10.0)).unwrap();
        let expect = c(0.000_771_534_294_239_966_2, -0.001_019_082_799_041_7);
        assert!((g - expect).norm() / expect.norm() < 1e-12);
    }

    #[test]
    fn recurrence_residual() {
        for &(re, im) in &[(0.3, 0.7), (-3.2, 15.0), (0.5, 300.0), (7.5, -40.0), (-55.5, 2.0)] {
            let s = c(re, im);
            let lhs = ln_gamma(s + 1.0).unwrap();
            let rhs = ln_gamma(s).unwrap() + s.ln();
            let diff = (lhs - rhs).exp() - 1.0;
            assert!(diff.norm() < 1e-12, "s={s} diff={diff}");
        }
    }

    #[test]
    fn reflection_residual() {
        for &(re, im) in &[(0.3, 0.7), (0.25, 4.0), (-1.7, 2.5), (0.5, 30.0)] {
            let s = c(re, im);
            let lhs = ln_gamma(s).unwrap() + ln_gamma(c(1.0, 0.0) - s).unwrap();
            let rhs = c(PI.ln(), 0.0) - ln_sin(s * PI);
            let diff = (lhs - rhs).exp() - 1.0;
            assert!(diff.norm() < 1e-12, "s={s} diff={diff}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let s = c(2.3, 17.0);
        let a = ln_gamma(s).unwrap();
        let b = ln_gamma(s.conj()).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn ln_sin_matches_direct() {
        for &(re, im) in &[(0.4, 0.2), (1.3, 5.0), (-2.0, -7.0), (0.7, 1.5)] {
            let z = c(re, im);
            let d = ln_sin(z).exp() - z.sin();
            assert!(d.norm() < 1e-12 * z.sin().norm());
        }
    }
}
