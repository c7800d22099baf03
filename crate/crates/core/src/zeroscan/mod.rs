//! Critical-line zeros of `ζ`, `L₋₄`, `C(0,1;s)` and `C(1,4m;s)` found from
//! sign changes of real-valued completed functions.

mod counts;
mod spacing;
mod theorems;

pub use counts::{count_table, predicted_count, predicted_delta3, table_families, CountTable, IntervalCount};
pub use spacing::{spacing_stats, spacing_stats_with, wigner_moments, wigner_surmise, SpacingHistogram};
pub use theorems::{factor_zero_check, FactorZeroCheck};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::angsum::{c14m_weights, BesselCache, Generators, TruncationPolicy, MAX_C14M_ORDER};
use crate::error::{Error, Result};
use crate::specfun::{beta_catalan, ln_gamma, zeta};

/// Default grid step along `t`.
pub const DEFAULT_STEP: f64 = 0.02;
/// Largest step [`scan`] accepts.
pub const MAX_STEP: f64 = 0.05;
/// Bisection target on `t`.
pub const REFINED_TOL: f64 = 1e-9;
/// Allowed `|Im| / |value|` of a completed function on the line.
pub const REALNESS_TOL: f64 = 1e-8;
/// Width of the blocks checked against the predicted density.
pub const GUARD_WIDTH: f64 = 10.0;
/// Deficit below the predicted count that triggers a rescan.
pub const GUARD_SLACK: f64 = 2.0;
/// A dip is searched when the parabolic vertex falls below this fraction of
/// the smallest sample.
const DIP_FRACTION: f64 = 0.25;
/// Cross-family separation below which a Δ₃ zero label is ambiguous.
pub const LABEL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Zeta,
    Beta4,
    C01,
    C14m(u32),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Zeta => write!(f, "zeta"),
            Family::Beta4 => write!(f, "beta4"),
            Family::C01 => write!(f, "c01"),
            Family::C14m(m) => write!(f, "c1{}", 4 * m),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `zeta`, `beta4` (or `l-4`), `c01` and `c14`, `c18`, `c112`, ...
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "zeta" => return Ok(Family::Zeta),
            "beta4" | "beta" | "l-4" | "l4" => return Ok(Family::Beta4),
            "c01" => return Ok(Family::C01),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix("c1") {
            if let Ok(n) = rest.parse::<u32>() {
                if n > 0 && n % 4 == 0 {
                    return Family::c14m(n / 4);
                }
            }
        }
        Err(Error::InvalidParameter(format!("unknown family '{s}'")))
    }
}

impl Family {
    pub fn c14m(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_C14M_ORDER {
            return Err(Error::InvalidParameter(format!("c14m needs 1 <= m <= {MAX_C14M_ORDER}, got {m}")));
        }
        Ok(Family::C14m(m))
    }

    fn generator_order(&self) -> Option<u32> {
        match self {
            Family::C01 => Some(0),
            Family::C14m(m) => Some(*m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub family: Family,
    pub t: f64,
    pub bracket: (f64, f64),
    pub refined_tol: f64,
}

/// `mass` is the size of the terms the value was summed from; `C(1,4m)` is a
/// combination of the `C(4k,1)` with weights up to `~16^m`, so its absolute
/// error scales with that sum rather than with the value.
fn check_real(t: f64, z: Complex64, mass: f64) -> Result<f64> {
    // the functions are O(1) on the line; measuring against at least 1 stops
    // the check firing on roundoff next to a zero
    let ratio = z.im.abs() / z.norm().max(mass).max(1.0);
    if ratio > REALNESS_TOL {
        return Err(Error::NotReal { t, ratio });
    }
    Ok(z.re)
}

fn rotation(arg: f64) -> Complex64 {
    Complex64::new(0.0, arg).exp()
}

/// Values of the completed functions of several families at `½ + it`,
/// sharing one generator evaluation between the lattice-sum families.
pub fn completed_values(
    families: &[Family],
    t: f64,
    policy: &TruncationPolicy,
    cache: &BesselCache,
) -> Result<Vec<f64>> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("t must be nonnegative, got {t}")));
    }
    let s = Complex64::new(0.5, t);
    let k_max = families.iter().filter_map(Family::generator_order).max();
    let gens = match k_max {
        Some(k) => Some(Generators::eval(s, k, policy, cache)?),
        None => None,
    };
    let lnpi = PI.ln();
    families
        .iter()
        .map(|fam| {
            let mut mass = 0.0;
            let z = match *fam {
                Family::Zeta => {
                    let theta = ln_gamma(s * 0.5)?.im - 0.5 * t * lnpi;
                    rotation(theta) * zeta(s)?
                }
                Family::Beta4 => {
                    let h = (s + 1.0) * 0.5;
                    let theta = (h * (4.0 / PI).ln() + ln_gamma(h)?).im;
                    rotation(theta) * beta_catalan(s)
                }
                Family::C01 => {
                    let g = gens.as_ref().expect("generators evaluated for C01");
                    rotation(ln_gamma(s)?.im - t * lnpi) * g.values[0]
                }
                Family::C14m(m) => {
                    let g = gens.as_ref().expect("generators evaluated for C14m");
                    mass = c14m_weights(m)?
                        .iter()
                        .zip(&g.values)
                        .map(|(w, v)| w.to_f64().unwrap_or(f64::INFINITY).abs() * v.norm())
                        .sum();
                    rotation(ln_gamma(s + 2.0 * m as f64)?.im - t * lnpi) * g.c14m(m)?
                }
            };
            check_real(t, z, mass)
        })
        .collect()
}

/// Real function on `s = ½ + it` whose sign changes are the family's zeros:
/// the completed form divided by the modulus of its Gamma/π prefactor.
pub fn completed_real(family: Family, t: f64, policy: &TruncationPolicy) -> Result<f64> {
    Ok(completed_values(&[family], t, policy, &BesselCache::with_capacity(1024))?[0])
}

fn grid(t_lo: f64, t_hi: f64, step: f64) -> Vec<f64> {
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    (0..=n)
        .map(|i| {
            let t = (t_lo + i as f64 * step).min(t_hi);
            // s = ½ is a removable singularity of the lattice sums
            if t < 0.5 * step {
                0.5 * step
            } else {
                t
            }
        })
        .collect()
}

fn sample(families: &[Family], ts: &[f64], policy: &TruncationPolicy) -> Result<Vec<Vec<f64>>> {
    ts.par_iter()
        .map_init(
            || BesselCache::with_capacity(4096),
            |cache, &t| completed_values(families, t, policy, cache),
        )
        .collect()
}

/// Illinois false position on a sign-change bracket.
fn refine(family: Family, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64, policy: &TruncationPolicy) -> Result<f64> {
    let cache = BesselCache::with_capacity(1024);
    let f = |t: f64| -> Result<f64> { Ok(completed_values(&[family], t, policy, &cache)?[0]) };
    let mut side = 0i32;
    for _ in 0..100 {
        if (b - a).abs() < REFINED_TOL {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if (fc > 0.0) == (fb > 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for a point in `(a, b)` where `sign · f < 0`,
/// following the minimum of `sign · f`. `None` when the minimum stays on the
/// sample side.
fn split_dip(
    family: Family,
    mut a: f64,
    mut b: f64,
    sign: f64,
    policy: &TruncationPolicy,
) -> Result<Option<f64>> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let cache = BesselCache::with_capacity(1024);
    let g = |t: f64| -> Result<f64> { Ok(sign * completed_values(&[family], t, policy, &cache)?[0]) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c)?, g(d)?);
    while b - a > REFINED_TOL {
        if gc < 0.0 {
            return Ok(Some(c));
        }
        if gd < 0.0 {
            return Ok(Some(d));
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d)?;
        }
    }
    Ok(None)
}

fn zeros_from_samples(
    family: Family,
    ts: &[f64],
    vals: &[f64],
    policy: &TruncationPolicy,
) -> Result<Vec<ZeroRecord>> {
    // zero counts as positive, so an exact hit at a node yields one bracket
    let mut brackets: Vec<(f64, f64, f64, f64)> = (0..ts.len().saturating_sub(1))
        .filter(|&i| (vals[i] < 0.0) != (vals[i + 1] < 0.0))
        .map(|i| (ts[i], vals[i], ts[i + 1], vals[i + 1]))
        .collect();
    // Two zeros inside one step leave no sign change. Where |f| dips between
    // same-signed neighbours and the parabola through the three samples
    // reaches the other sign (or nearly), search the dip for a sign change.
    let dips: Vec<usize> = (1..ts.len().saturating_sub(1))
        .filter(|&i| {
            let (l, c, r) = (vals[i - 1], vals[i], vals[i + 1]);
            let same = (l < 0.0) == (c < 0.0) && (c < 0.0) == (r < 0.0);
            if !same || c.abs() > l.abs() || c.abs() > r.abs() {
                return false;
            }
            let (h1, h2) = (ts[i] - ts[i - 1], ts[i + 1] - ts[i]);
            let curv = 2.0 * ((r - c) / h2 - (c - l) / h1) / (h1 + h2);
            let slope = ((r - c) / h2 * h1 + (c - l) / h1 * h2) / (h1 + h2);
            let vertex = if curv * c.signum() > 0.0 {
                c - slope * slope / (2.0 * curv)
            } else {
                c
            };
            vertex * c.signum() < DIP_FRACTION * c.abs()
        })
        .collect();
    let splits: Vec<Option<(usize, f64)>> = dips
        .par_iter()
        .map(|&i| {
            let sign = if vals[i] < 0.0 { -1.0 } else { 1.0 };
            Ok(split_dip(family, ts[i - 1], ts[i + 1], sign, policy)?.map(|t| (i, t)))
        })
        .collect::<Result<_>>()?;
    for (i, mid) in splits.into_iter().flatten() {
        let fm = completed_real(family, mid, policy)?;
        brackets.push((ts[i - 1], vals[i - 1], mid, fm));
        brackets.push((mid, fm, ts[i + 1], vals[i + 1]));
    }
    let mut zeros: Vec<ZeroRecord> = brackets
        .par_iter()
        .map(|&(lo, flo, hi, fhi)| {
            let t = if flo == 0.0 {
                lo
            } else if fhi == 0.0 {
                hi
            } else {
                refine(family, lo, flo, hi, fhi, policy)?
            };
            Ok(ZeroRecord {
                family,
                t,
                bracket: (lo, hi),
                refined_tol: REFINED_TOL,
            })
        })
        .collect::<Result<_>>()?;
    zeros.sort_by(|x, y| x.t.total_cmp(&y.t));
    Ok(zeros)
}

/// Zeros of several families on `[t_lo, t_hi]` from one pass over the grid.
///
/// After the pass every `GUARD_WIDTH` block is compared with the predicted
/// count; a block short by more than `GUARD_SLACK` is rescanned at a quarter
/// of the step, and a remaining deficit is logged as a suspected miss.
pub fn scan_families(
    families: &[Family],
    t_range: (f64, f64),
    step: f64,
    policy: &TruncationPolicy,
) -> Result<Vec<Vec<ZeroRecord>>> {
    let (t_lo, t_hi) = t_range;
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(Error::InvalidParameter(format!("step must lie in (0, {MAX_STEP}], got {step}")));
    }
    if !(t_lo >= 0.0 && t_hi > t_lo) {
        return Err(Error::InvalidParameter(format!("bad range [{t_lo}, {t_hi}]")));
    }
    let ts = grid(t_lo, t_hi, step);
    let vals = sample(families, &ts, policy)?;
    let mut out = Vec::with_capacity(families.len());
    for (fi, &fam) in families.iter().enumerate() {
        let column: Vec<f64> = vals.iter().map(|v| v[fi]).collect();
        let zeros = zeros_from_samples(fam, &ts, &column, policy)?;
        out.push(density_guard(fam, zeros, t_range, step, policy)?);
    }
    Ok(out)
}

fn density_guard(
    family: Family,
    mut zeros: Vec<ZeroRecord>,
    (t_lo, t_hi): (f64, f64),
    step: f64,
    policy: &TruncationPolicy,
) -> Result<Vec<ZeroRecord>> {
    let mut a = t_lo;
    while a < t_hi {
        let b = (a + GUARD_WIDTH).min(t_hi);
        let expected = predicted_count(family, b) - predicted_count(family, a);
        let found = zeros.iter().filter(|z| z.t >= a && z.t < b).count();
        if (found as f64) < expected - GUARD_SLACK {
            let fine = step / 4.0;
            let ts = grid(a, b, fine);
            let vals: Vec<f64> = sample(&[family], &ts, policy)?.into_iter().map(|v| v[0]).collect();
            let extra = zeros_from_samples(family, &ts, &vals, policy)?;
            let n_fine = extra.iter().filter(|z| z.t >= a && z.t < b).count();
            if n_fine > found {
                zeros.retain(|z| !(z.t >= a && z.t < b));
                zeros.extend(extra.into_iter().filter(|z| z.t >= a && z.t < b));
            }
            if (n_fine.max(found) as f64) < expected - GUARD_SLACK {
                log::warn!(
                    "{family}: suspected missed zero in [{a}, {b}]: found {}, predicted {expected:.1}",
                    n_fine.max(found)
                );
            }
        }
        a = b;
    }
    zeros.sort_by(|x, y| x.t.total_cmp(&y.t));
    Ok(zeros)
}

/// Zeros of one family on `[t_lo, t_hi]`, sorted by `t`.
pub fn scan(family: Family, t_range: (f64, f64), step: f64, policy: &TruncationPolicy) -> Result<Vec<ZeroRecord>> {
    Ok(scan_families(&[family], t_range, step, policy)?.remove(0))
}

/// Origin of a zero of `Δ₃(2,2m;s) ∝ ζ(s) L₋₄(s) C(1,4m;s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroLabel {
    Zeta,
    Beta4,
    C14m,
}

impl fmt::Display for ZeroLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroLabel::Zeta => "+1",
            ZeroLabel::Beta4 => "-4",
            ZeroLabel::C14m => "14",
        })
    }
}

/// Zeros of `Δ₃(2,2m;½+it)` labelled by the factor they come from.
pub fn classify_delta3_zeros(
    m: u32,
    t_range: (f64, f64),
    step: f64,
    policy: &TruncationPolicy,
) -> Result<Vec<(f64, ZeroLabel)>> {
    let fams = [Family::Zeta, Family::Beta4, Family::c14m(m)?];
    let lists = scan_families(&fams, t_range, step, policy)?;
    let labels = [ZeroLabel::Zeta, ZeroLabel::Beta4, ZeroLabel::C14m];
    let mut merged: Vec<(f64, ZeroLabel)> = lists
        .iter()
        .zip(labels)
        .flat_map(|(zs, l)| zs.iter().map(move |z| (z.t, l)))
        .collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in merged.windows(2) {
        if (w[1].0 - w[0].0).abs() < LABEL_TOL && w[0].1 != w[1].1 {
            return Err(Error::AmbiguousLabel {
                t: w[0].0,
                first: w[0].1.to_string(),
                second: w[1].1.to_string(),
                tol: LABEL_TOL,
            });
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests;
