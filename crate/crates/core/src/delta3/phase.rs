//! The rational phase factor `F₂ₘ(s) = Π_{k=1}^{2m} (k-s)/(k-1+s)` and its
//! half-argument `φ₂ₘ` with `exp(2iφ₂ₘ) = F₂ₘ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidParameter("m must be positive".into()))
    } else {
        Ok(())
    }
}

/// `F₂ₘ(s)`.
pub fn f2m(m: u32, s: Complex64) -> Result<Complex64> {
    check_m(m)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 1..=2 * m {
        let den = s + (k - 1) as f64;
        if den.norm() == 0.0 {
            return Err(Error::PhasePole { s, k });
        }
        acc *= (-s + k as f64) / den;
    }
    Ok(acc)
}

/// `1/F₂ₘ(s) = F₂ₘ(1-s)`, with poles at `s = 1, …, 2m`.
pub fn f2m_inv(m: u32, s: Complex64) -> Result<Complex64> {
    check_m(m)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 1..=2 * m {
        let den = -s + k as f64;
        if den.norm() == 0.0 {
            return Err(Error::PhasePole { s, k });
        }
        acc *= (s + (k - 1) as f64) / den;
    }
    Ok(acc)
}

/// `φ₂ₘ(s) = Σ_k [π/2 - atan(-i(s-½)/(k-½))]`, the branch that is real on
/// the critical line and vanishes as `t → +∞`.
pub fn phi2m_complex(m: u32, s: Complex64) -> Result<Complex64> {
    check_m(m)?;
    let i = Complex64::new(0.0, 1.0);
    let u = s - 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=2 * m {
        let a = k as f64 - 0.5;
        acc += Complex64::new(FRAC_PI_2, 0.0) - (-i * u / a).atan();
    }
    Ok(acc)
}

/// `φ₂ₘ,c(t) = φ₂ₘ(½ + it)`, real and continuous in `t`, `≈ 2m²/t` for large `t`.
///
/// `F₂ₘ` has modulus one on the line, so it never vanishes there and no
/// branch point can be met.
pub fn phi2m(m: u32, t: f64) -> Result<f64> {
    check_m(m)?;
    Ok((1..=2 * m)
        .map(|k| FRAC_PI_2 - (t / (k as f64 - 0.5)).atan())
        .sum())
}

/// `dφ₂ₘ,c/dt`.
pub fn phi2m_prime(m: u32, t: f64) -> Result<f64> {
    check_m(m)?;
    Ok((1..=2 * m)
        .map(|k| {
            let a = k as f64 - 0.5;
            -a / (a * a + t * t)
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `exp(iφ)` equals the principal square root of `F`.
    Principal,
    /// `exp(iφ)` is minus the principal root: `φ` was continued across a cut.
    Continued,
}

/// `F₂ₘ(s)`, `φ₂ₘ(s)` and the square root of `F` used by the rescaled sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub m: u32,
    pub s: Complex64,
    pub f: Complex64,
    pub phi: Complex64,
    /// Principal square root of `f`.
    pub sqrt_f: Complex64,
    pub branch: Branch,
}

impl PhaseState {
    pub fn new(m: u32, s: Complex64) -> Result<Self> {
        let f = f2m(m, s)?;
        let phi = phi2m_complex(m, s)?;
        let sqrt_f = f.sqrt();
        let e = (Complex64::new(0.0, 1.0) * phi).exp();
        let branch = if (e - sqrt_f).norm() <= (e + sqrt_f).norm() {
            Branch::Principal
        } else {
            Branch::Continued
        };
        Ok(Self {
            m,
            s,
            f,
            phi,
            sqrt_f,
            branch,
        })
    }

    /// `F₂ₘ` is real and negative within `tol` (relative): the cut of `√F`.
    pub fn near_cut(&self, tol: f64) -> bool {
        self.f.re < 0.0 && self.f.im.abs() <= tol * self.f.norm()
    }
}
