//! Null contours of `Re Δ₃` and `Im Δ₃` on rectangular `(σ, t)` grids, the
//! tangent directions where they meet the critical line, the branch circle
//! of `√F₂` and the real-axis crossings.

mod axis;
mod marching;

pub use axis::{real_axis_crossings, AxisCrossing};
pub use marching::{trace_nulls, Trace};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angsum::{BesselCache, TruncationPolicy};
use crate::delta3::{delta3_derivative, delta3_with, f2m, large_sigma_approx, phi2m};
use crate::error::{Error, Result};

/// Smallest node count per axis.
pub const MIN_NODES: usize = 16;
/// Cells within this many cells of a pole are masked.
pub const POLE_MASK_CELLS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub sigma_range: (f64, f64),
    pub t_range: (f64, f64),
    pub n_sigma: usize,
    pub n_t: usize,
}

impl GridSpec {
    pub fn new(sigma_range: (f64, f64), t_range: (f64, f64), n_sigma: usize, n_t: usize) -> Result<Self> {
        let g = Self {
            sigma_range,
            t_range,
            n_sigma,
            n_t,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sigma < MIN_NODES || self.n_t < MIN_NODES {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {MIN_NODES} nodes per axis, got {} x {}",
                self.n_sigma, self.n_t
            )));
        }
        let ok = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.1 > r.0;
        if !ok(self.sigma_range) || !ok(self.t_range) {
            return Err(Error::InvalidParameter(format!(
                "empty grid range sigma {:?}, t {:?}",
                self.sigma_range, self.t_range
            )));
        }
        Ok(())
    }

    pub fn d_sigma(&self) -> f64 {
        (self.sigma_range.1 - self.sigma_range.0) / (self.n_sigma - 1) as f64
    }

    pub fn d_t(&self) -> f64 {
        (self.t_range.1 - self.t_range.0) / (self.n_t - 1) as f64
    }

    pub fn sigmas(&self) -> Vec<f64> {
        (0..self.n_sigma).map(|i| self.sigma_range.0 + i as f64 * self.d_sigma()).collect()
    }

    pub fn ts(&self) -> Vec<f64> {
        (0..self.n_t).map(|j| self.t_range.0 + j as f64 * self.d_t()).collect()
    }

    /// Fails if a pole of `Δ₃(2,2m;·)` (at `s = 0, 1, …, 2m`) lies closer
    /// than half a cell to a node.
    pub fn check_poles(&self, m: u32) -> Result<()> {
        let (ds, dt) = (self.d_sigma(), self.d_t());
        let j = ((0.0 - self.t_range.0) / dt).round();
        if j < 0.0 || j > (self.n_t - 1) as f64 {
            return Ok(());
        }
        let t_near = self.t_range.0 + j * dt;
        for k in 0..=2 * m {
            let i = ((k as f64 - self.sigma_range.0) / ds).round();
            if i < 0.0 || i > (self.n_sigma - 1) as f64 {
                continue;
            }
            let s_near = self.sigma_range.0 + i * ds;
            // exactly half a cell is allowed, up to rounding in the node positions
            let half = 0.5 * (1.0 - 1e-9);
            if (s_near - k as f64).abs() < half * ds && t_near.abs() < half * dt {
                return Err(Error::InvalidParameter(format!(
                    "grid node ({s_near}, {t_near}) is within half a cell of the pole at s = {k}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    ReDelta3,
    ImDelta3,
    PrefactorRe,
    PrefactorIm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridSource {
    Delta3,
    /// The large-`σ` prefactor `16 Γ(s+2) Γ(s) / ((1-s)(2-s) π^{2s})`.
    Prefactor,
}

/// Real and imaginary parts on a grid, row-major in `t` (`re[j * n_sigma + i]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledGrid {
    pub spec: GridSpec,
    pub m: u32,
    pub source: GridSource,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    /// False where evaluation failed or was not finite; such nodes are never interpolated.
    pub valid: Vec<bool>,
}

fn evaluate(source: GridSource, m: u32, s: Complex64, policy: &TruncationPolicy, cache: &BesselCache) -> Option<Complex64> {
    let v = match source {
        GridSource::Delta3 => delta3_with(m, s, policy, cache).ok()?.value,
        GridSource::Prefactor => large_sigma_approx(s).ok()?.prefactor,
    };
    (v.re.is_finite() && v.im.is_finite()).then_some(v)
}

fn sample(m: u32, grid: GridSpec, source: GridSource, policy: &TruncationPolicy) -> Result<SampledGrid> {
    grid.validate()?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    grid.check_poles(m)?;
    let sig = grid.sigmas();
    let rows: Vec<Vec<Option<Complex64>>> = grid
        .ts()
        .par_iter()
        .map_init(
            || BesselCache::with_capacity(4096),
            |cache, &t| {
                sig.iter()
                    .map(|&x| evaluate(source, m, Complex64::new(x, t), policy, cache))
                    .collect()
            },
        )
        .collect();
    let flat: Vec<Option<Complex64>> = rows.into_iter().flatten().collect();
    let poisoned = flat.iter().filter(|v| v.is_none()).count();
    if poisoned > 0 {
        log::warn!("{poisoned} grid nodes could not be evaluated and are masked");
    }
    Ok(SampledGrid {
        spec: grid,
        m,
        source,
        re: flat.iter().map(|v| v.map_or(f64::NAN, |z| z.re)).collect(),
        im: flat.iter().map(|v| v.map_or(f64::NAN, |z| z.im)).collect(),
        valid: flat.iter().map(Option::is_some).collect(),
    })
}

/// `Re Δ₃` and `Im Δ₃` on the grid; one evaluation per node serves both.
pub fn sample_grid(m: u32, grid: GridSpec, policy: &TruncationPolicy) -> Result<SampledGrid> {
    sample(m, grid, GridSource::Delta3, policy)
}

/// The large-`σ` prefactor on the grid (needs `σ ≥ 3.5` throughout).
pub fn sample_prefactor_grid(grid: GridSpec) -> Result<SampledGrid> {
    if grid.sigma_range.0 < 3.5 {
        return Err(Error::InvalidParameter(format!(
            "prefactor grid needs sigma >= 3.5, got {}",
            grid.sigma_range.0
        )));
    }
    sample(1, grid, GridSource::Prefactor, &TruncationPolicy::default())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourPolyline {
    pub field: FieldKind,
    pub m: u32,
    /// `(σ, t)` points on cell edges.
    pub vertices: Vec<(f64, f64)>,
    /// Returns to its first vertex; open lines end at the grid or mask boundary.
    pub closed: bool,
}

fn pole_mask(grid: &GridSpec, m: u32) -> impl Fn(usize, usize) -> bool {
    let (ds, dt) = (grid.d_sigma(), grid.d_t());
    let (s0, t0) = (grid.sigma_range.0, grid.t_range.0);
    let poles: Vec<f64> = (0..=2 * m).map(|k| k as f64).collect();
    move |i, j| {
        let (xl, yl) = (s0 + i as f64 * ds, t0 + j as f64 * dt);
        let (xh, yh) = (xl + ds, yl + dt);
        poles.iter().any(|&p| {
            let dx = if p < xl { xl - p } else if p > xh { p - xh } else { 0.0 };
            let dy = if 0.0 < yl { yl } else if 0.0 > yh { -yh } else { 0.0 };
            dx <= POLE_MASK_CELLS * ds && dy <= POLE_MASK_CELLS * dt
        })
    }
}

/// Null lines of one field of a sampled grid.
///
/// Saddle cells are resolved by evaluating the field at the cell centre.
/// Cells near the poles of `Δ₃` are masked.
pub fn extract_null(grid: &SampledGrid, field: FieldKind, policy: &TruncationPolicy) -> Result<Vec<ContourPolyline>> {
    let values = match (grid.source, field) {
        (GridSource::Delta3, FieldKind::ReDelta3) | (GridSource::Prefactor, FieldKind::PrefactorRe) => &grid.re,
        (GridSource::Delta3, FieldKind::ImDelta3) | (GridSource::Prefactor, FieldKind::PrefactorIm) => &grid.im,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "field {field:?} is not sampled by a {:?} grid",
                grid.source
            )))
        }
    };
    let imag = matches!(field, FieldKind::ImDelta3 | FieldKind::PrefactorIm);
    let cache = BesselCache::with_capacity(1024);
    let field_at = |x: f64, y: f64| {
        let v = evaluate(grid.source, grid.m, Complex64::new(x, y), policy, &cache)?;
        Some(if imag { v.im } else { v.re })
    };
    let mask = pole_mask(&grid.spec, grid.m);
    let traces = trace_nulls(&grid.spec.sigmas(), &grid.spec.ts(), values, &grid.valid, mask, field_at);
    Ok(traces
        .into_iter()
        .map(|t| ContourPolyline {
            field,
            m: grid.m,
            vertices: t.points,
            closed: t.closed,
        })
        .collect())
}

/// Ordinates where polylines cross the vertical line `σ = sigma0`.
pub fn line_crossings(lines: &[ContourPolyline], sigma0: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for l in lines {
        for w in l.vertices.windows(2) {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            if (x1 - sigma0) * (x2 - sigma0) < 0.0 || (x1 == sigma0 && x2 != sigma0) {
                let f = (sigma0 - x1) / (x2 - x1);
                out.push(y1 + f * (y2 - y1));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    out
}

fn segment_intersection(p: ((f64, f64), (f64, f64)), q: ((f64, f64), (f64, f64))) -> Option<(f64, f64)> {
    let ((x1, y1), (x2, y2)) = p;
    let ((x3, y3), (x4, y4)) = q;
    let (dx1, dy1, dx2, dy2) = (x2 - x1, y2 - y1, x4 - x3, y4 - y3);
    let den = dx1 * dy2 - dy1 * dx2;
    if den == 0.0 {
        return None;
    }
    let u = ((x3 - x1) * dy2 - (y3 - y1) * dx2) / den;
    let v = ((x3 - x1) * dy1 - (y3 - y1) * dx1) / den;
    ((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)).then(|| (x1 + u * dx1, y1 + u * dy1))
}

/// Points where a Re-null line meets an Im-null line: the zeros of `Δ₃`
/// resolved by the grid, sorted by `t`.
pub fn null_intersections(re: &[ContourPolyline], im: &[ContourPolyline]) -> Vec<(f64, f64)> {
    type Seg = ((f64, f64), (f64, f64));
    let segs = |ls: &[ContourPolyline]| -> Vec<Seg> {
        ls.iter()
            .flat_map(|l| l.vertices.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
            .collect()
    };
    let (a, b) = (segs(re), segs(im));
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // bucket the Im segments on a grid no finer than the longest segment
    let extent = |v: &[Seg]| {
        v.iter()
            .map(|&((x1, y1), (x2, y2))| ((x2 - x1).abs(), (y2 - y1).abs()))
            .fold((0.0f64, 0.0f64), |acc, e| (acc.0.max(e.0), acc.1.max(e.1)))
    };
    let (ea, eb) = (extent(&a), extent(&b));
    let bx = ea.0.max(eb.0).max(1e-12);
    let by = ea.1.max(eb.1).max(1e-12);
    let key = |x: f64, y: f64| ((x / bx).floor() as i64, (y / by).floor() as i64);
    let mut buckets: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
    for (k, &((x1, y1), _)) in b.iter().enumerate() {
        buckets.entry(key(x1, y1)).or_default().push(k);
    }
    let mut out = Vec::new();
    for &sa in &a {
        let (cx, cy) = key(sa.0 .0, sa.0 .1);
        for dx in -2..=2 {
            for dy in -2..=2 {
                if let Some(ks) = buckets.get(&(cx + dx, cy + dy)) {
                    out.extend(ks.iter().filter_map(|&k| segment_intersection(sa, b[k])));
                }
            }
        }
    }
    out.sort_by(|p, q| p.1.total_cmp(&q.1).then(p.0.total_cmp(&q.0)));
    // a crossing exactly at a shared vertex is reported by adjacent segments
    out.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    out
}

/// Ordinates of the Re/Im null intersections lying within `tol` of
/// `σ = sigma0` (zeros of `Δ₃` on or near that line).
pub fn simultaneous_crossings(re: &[ContourPolyline], im: &[ContourPolyline], sigma0: f64, tol: f64) -> Vec<f64> {
    null_intersections(re, im)
        .into_iter()
        .filter(|p| (p.0 - sigma0).abs() <= tol)
        .map(|p| p.1)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineTangents {
    pub re_tangent: (f64, f64),
    pub im_tangent: (f64, f64),
}

/// Relative size of `dΔ₃/dt` below which the tangent is called degenerate.
pub const TANGENT_DEGENERACY: f64 = 1e-10;

/// Directions of the Re-null and Im-null lines where they meet `σ = ½` at
/// height `t`: `(1, tan φ₂ₘ,c(t))` and `(-tan φ₂ₘ,c(t), 1)`.
pub fn tangent_at_line(m: u32, t: f64, policy: &TruncationPolicy) -> Result<LineTangents> {
    let cache = BesselCache::with_capacity(1024);
    let s = Complex64::new(0.5, t);
    let d = delta3_derivative(m, s, policy, &cache)?;
    // compare against |Δ₃| a little way along the line, in the same scaling
    let probe = delta3_with(m, s + Complex64::new(0.0, 0.25), policy, &cache)?;
    let size = (probe.ln_abs() - d.log_scale).exp();
    if !(d.mantissa.norm() > TANGENT_DEGENERACY * size) {
        return Err(Error::DegenerateTangent(t));
    }
    let tan = phi2m(m, t)?.tan();
    Ok(LineTangents {
        re_tangent: (1.0, tan),
        im_tangent: (-tan, 1.0),
    })
}

/// Points `(σ, t)` on the circle `|s - ½| = √3/2` where `F₂(s)` is real and
/// negative (the cut of `√F₂`), with `max |Im F₂| / |F₂|` over the samples.
pub fn branch_circle(m: u32, samples: usize) -> Result<(Vec<(f64, f64)>, f64)> {
    if m != 1 {
        return Err(Error::InvalidParameter(format!(
            "the branch set is a circle only for m = 1, got {m}"
        )));
    }
    if samples < 4 {
        return Err(Error::InvalidParameter("need at least 4 samples".into()));
    }
    let r = 3f64.sqrt() / 2.0;
    let mut pts = Vec::with_capacity(samples);
    let mut worst: f64 = 0.0;
    for k in 0..samples {
        let a = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let (x, y) = (0.5 + r * a.cos(), r * a.sin());
        let f = f2m(1, Complex64::new(x, y))?;
        if !(f.re < 0.0) {
            return Err(Error::InvalidParameter(format!("F₂ not negative on the circle at ({x}, {y}): {f}")));
        }
        worst = worst.max(f.im.abs() / f.norm());
        pts.push((x, y));
    }
    Ok((pts, worst))
}

#[cfg(test)]
mod tests;
