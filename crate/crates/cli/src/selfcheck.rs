//! Invariant suite behind `anglat selfcheck`.

use std::process::ExitCode;
use std::time::Instant;

use anglat_core::angsum::{
    self, appendix_table, chebyshev_t_coeffs, BesselCache, CosineCombination, Generators, Rational, TruncationPolicy,
};
use anglat_core::delta3;
use anglat_core::specfun::{self, QuadratureSpec};
use anglat_core::{Complex64, Error};

use crate::commands::{CliError, CliResult};
use crate::{Fault, SelfcheckArgs};

struct Check {
    name: &'static str,
    residual: f64,
    threshold: f64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn ratio(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Sample points: a fixed spread, not random, so reports are reproducible.
fn points(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let u = (k as f64 + 0.5) / n as f64;
            c(-1.5 + 4.0 * ((u * 7.3).fract()), 2.0 + 45.0 * u)
        })
        .collect()
}

fn hobson(n: usize) -> Result<f64, Error> {
    let q = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for k in 0..n {
        let u = (k as f64 + 0.5) / n as f64;
        let s = Complex64::from_polar(4.5 * u, 6.1 * u + 0.3);
        let (p, qq) = (0.5 + 2.5 * (u * 3.7).fract(), 0.5 + 2.5 * (u * 5.3).fract());
        let lhs = specfun::hobson_integral(s, p, qq)?;
        let rhs = (s * 0.5 * (qq / p).ln()).exp() * specfun::macdonald_k(s, 2.0 * (qq * p).sqrt(), &q)? * 2.0;
        worst = worst.max(rel(lhs, rhs));
    }
    Ok(worst)
}

fn k_symmetry(n: usize) -> Result<f64, Error> {
    let q = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for k in 0..n {
        let nu = c(-10.0 + 20.0 * (k as f64 * 0.37).fract(), -50.0 + 100.0 * (k as f64 * 0.61).fract());
        let x = 1.0 + 20.0 * (k as f64 * 0.23).fract();
        let a = specfun::macdonald_k(nu, x, &q)?;
        let b = specfun::macdonald_k(-nu, x, &q)?;
        worst = worst.max(rel(a, b));
    }
    Ok(worst)
}

fn zeta_functional(pts: &[Complex64]) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for &s in pts {
        let one = c(1.0, 0.0);
        let lhs = specfun::zeta(s)?;
        let rhs = (s * 2f64.ln() + (s - 1.0) * std::f64::consts::PI.ln()).exp()
            * (s * std::f64::consts::FRAC_PI_2).sin()
            * specfun::gamma(one - s)?
            * specfun::zeta(one - s)?;
        worst = worst.max(rel(rhs, lhs));
    }
    Ok(worst)
}

fn product_identity(pts: &[Complex64], pol: &TruncationPolicy) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for &s in pts {
        worst = worst.max(rel(angsum::c01_product(s)?, angsum::c01(s, pol)?));
    }
    Ok(worst)
}

fn functional(pts: &[Complex64], pol: &TruncationPolicy) -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for m in 1..=3 {
        for &s in pts {
            worst = worst.max(delta3::functional_residual(m, s, pol)?);
        }
    }
    Ok(worst)
}

/// Generator weights of `C(1,8)` re-derived from `T₈` against the tabulated
/// `128 C(8,1) − 224 C(4,1) + 49 C(0,1)`, compared by value.
fn c18_relation(fault: Option<Fault>, pol: &TruncationPolicy) -> Result<f64, Error> {
    let mut t8 = chebyshev_t_coeffs(8)?;
    if fault == Some(Fault::Chebyshev) {
        t8[8] += 1;
    }
    let derived = CosineCombination::from_poly(&t8).to_generators();
    let cache = BesselCache::with_capacity(256);
    let mut worst = 0.0f64;
    for s in [c(3.0, 0.0), c(0.5, 20.0), c(-0.7, 4.0)] {
        let g = Generators::eval(s, 2, pol, &cache)?;
        let printed = g.values[2] * 128.0 - g.values[1] * 224.0 + g.values[0] * 49.0;
        worst = worst.max(rel(g.combine(&derived)?, printed));
    }
    Ok(worst)
}

/// Every tabulated relation against the Chebyshev reduction, as the largest
/// absolute weight difference.
fn appendix() -> Result<f64, Error> {
    let mut worst = 0.0f64;
    for (spec, w) in appendix_table() {
        let derived = spec.generator_weights()?;
        for k in 0..3 {
            let d = derived.get(k).map_or(0.0, ratio);
            worst = worst.max((d - ratio(&w[k])).abs());
        }
        if derived.len() > 3 {
            worst = worst.max(derived[3..].iter().map(|r| ratio(r).abs()).fold(0.0, f64::max));
        }
    }
    Ok(worst)
}

/// Largest ratio `sup(m_{k+1}) / sup(m_k)` of the deviation of `C(2m,1;½+it)`
/// from `2ζ(1+2it)`; below 1 when the deviation shrinks monotonically.
fn axial_limit(samples: usize, pol: &TruncationPolicy) -> Result<f64, Error> {
    let mut sups = Vec::new();
    for m in [10, 30, 100] {
        let mut sup = 0.0f64;
        for i in 0..samples {
            let t = 1.0 + 9.0 * i as f64 / (samples - 1) as f64;
            let v = angsum::c2n1(m, c(0.5, t), pol)?;
            let lim = specfun::zeta(c(1.0, 2.0 * t))? * 2.0;
            sup = sup.max((v / lim - 1.0).norm());
        }
        sups.push(sup);
    }
    Ok(sups.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max))
}

fn known_zero(pol: &TruncationPolicy) -> Result<f64, Error> {
    let z = delta3::delta3(1, c(0.5, 19.80599), pol)?;
    let near = delta3::delta3(1, c(0.5, 19.9), pol)?;
    Ok((z.ln_abs() - near.ln_abs()).exp())
}

fn pole_constant(pol: &TruncationPolicy) -> Result<f64, Error> {
    let v = delta3::laurent_coefficient(1, c(1.0, 0.0), 2, pol)?;
    Ok((v.re + 1.59643).abs())
}

pub fn run(a: &SelfcheckArgs, pol: &TruncationPolicy) -> CliResult {
    let start = Instant::now();
    let quick = a.quick;
    let pts = points(if quick { 4 } else { 12 });
    let mut checks: Vec<(Check, Result<f64, Error>)> = Vec::new();
    let mut add = |name, threshold, r: Result<f64, Error>| {
        checks.push((
            Check {
                name,
                residual: *r.as_ref().unwrap_or(&f64::NAN),
                threshold,
            },
            r,
        ))
    };
    add("hobson identity", 1e-8, hobson(if quick { 6 } else { 30 }));
    add("K order symmetry", 1e-12, k_symmetry(if quick { 6 } else { 30 }));
    add("zeta functional equation", 1e-10, zeta_functional(&pts));
    add("C(0,1) = 4 zeta L-4", 1e-9, product_identity(&pts, pol));
    add("appendix relations", 0.0, appendix());
    add("C(1,8) from T8", 1e-10, c18_relation(a.inject_fault, pol));
    add("functional equations m=1..3", 1e-8, functional(&pts[..pts.len().min(6)], pol));
    add("axial limit decreasing", 1.0, axial_limit(if quick { 10 } else { 46 }, pol));
    if !quick {
        add("Delta3 zero at 19.80599", 1e-4, known_zero(pol));
        add("Laurent constant at s=1", 1e-3, pole_constant(pol));
    }
    let mut failed = 0;
    for (chk, r) in &checks {
        let ok = match r {
            Ok(v) if chk.threshold == 0.0 => *v == 0.0,
            Ok(v) => *v < chk.threshold,
            Err(_) => false,
        };
        if !ok {
            failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        match r {
            Ok(_) => println!("{:<30} {:>10.3e}  (limit {:.0e})  {status}", chk.name, chk.residual, chk.threshold),
            Err(e) => println!("{:<30} error: {e}  {status}", chk.name),
        }
    }
    println!(
        "{} checks, {} failed, {:.1} s",
        checks.len(),
        failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} self-check(s) failed")));
    }
    Ok(ExitCode::SUCCESS)
}
