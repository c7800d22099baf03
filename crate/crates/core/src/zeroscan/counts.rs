//! Smooth zero-counting functions and the interval count table.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{scan_families, Family, ZeroRecord};
use crate::angsum::TruncationPolicy;
use crate::error::{Error, Result};

/// Leading-order number of zeros on `(0, t]` of the critical line.
///
/// `ζ`: `(t/2π) log t - (t/2π)(1 + log 2π)`; `L₋₄`: the same with `log(π/2)`;
/// `C(0,1)` and every `C(1,4m)`: `(t/π) log t - (t/π)(1 + log π)`.
/// Returns zero for `t <= 0`.
pub fn predicted_count(family: Family, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let lt = t.ln();
    match family {
        Family::Zeta => t / (2.0 * PI) * (lt - 1.0 - (2.0 * PI).ln()),
        Family::Beta4 => t / (2.0 * PI) * (lt - 1.0 - (PI / 2.0).ln()),
        Family::C01 | Family::C14m(_) => t / PI * (lt - 1.0 - PI.ln()),
    }
}

/// Counting function for `Δ₃` zeros at abscissa `σ`:
/// `(2t/π) log t - (2t/π)(1 + log π) + σ - ½ + σ(1 - 2σ)/(πt)`.
pub fn predicted_delta3(sigma: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    2.0 * t / PI * (t.ln() - 1.0 - PI.ln()) + sigma - 0.5 + sigma * (1.0 - 2.0 * sigma) / (PI * t)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalCount {
    pub t_start: f64,
    pub t_end: f64,
    /// One entry per family of the owning [`CountTable`].
    pub counts: Vec<usize>,
    /// `predicted_count(t_end) - predicted_count(t_start)` per family.
    pub predicted: Vec<f64>,
    /// Row spans from zero to `t_end` rather than one interval.
    pub cumulative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountTable {
    pub families: Vec<Family>,
    pub rows: Vec<IntervalCount>,
}

impl CountTable {
    /// Bins zero lists (one per family, same order) into `width`-wide rows, with
    /// a cumulative row after every `cumulative_every` and at `t_max`.
    pub fn from_zeros(
        families: &[Family],
        zeros: &[Vec<ZeroRecord>],
        t_max: f64,
        width: f64,
        cumulative_every: f64,
    ) -> Result<Self> {
        if zeros.len() != families.len() {
            return Err(Error::InvalidParameter("one zero list per family required".into()));
        }
        if !(width > 0.0 && t_max > 0.0 && cumulative_every >= width) {
            return Err(Error::InvalidParameter(format!(
                "bad table layout: t_max {t_max}, width {width}, cumulative {cumulative_every}"
            )));
        }
        let row = |a: f64, b: f64, cumulative: bool| IntervalCount {
            t_start: a,
            t_end: b,
            counts: zeros
                .iter()
                .map(|zs| zs.iter().filter(|z| z.t > a && z.t <= b).count())
                .collect(),
            predicted: families
                .iter()
                .map(|&f| predicted_count(f, b) - predicted_count(f, a))
                .collect(),
            cumulative,
        };
        let n = (t_max / width).round() as usize;
        let per_block = (cumulative_every / width).round() as usize;
        let mut rows = Vec::new();
        for i in 0..n {
            let a = i as f64 * width;
            let b = ((i + 1) as f64 * width).min(t_max);
            rows.push(row(a, b, false));
            if (i + 1) % per_block == 0 || i + 1 == n {
                rows.push(row(0.0, b, true));
            }
        }
        Ok(Self {
            families: families.to_vec(),
            rows,
        })
    }

    pub fn cumulative_rows(&self) -> impl Iterator<Item = &IntervalCount> {
        self.rows.iter().filter(|r| r.cumulative)
    }

    pub fn column(&self, family: Family) -> Option<usize> {
        self.families.iter().position(|&f| f == family)
    }
}

impl IntervalCount {
    /// `n_ζ + n₋₄ + n_{C(1,4)}` when all three columns are present.
    pub fn sum_zeta_beta_c14(&self, table: &CountTable) -> Option<usize> {
        let a = table.column(Family::Zeta)?;
        let b = table.column(Family::Beta4)?;
        let c = table.column(Family::C14m(1))?;
        Some(self.counts[a] + self.counts[b] + self.counts[c])
    }
}

/// The five zero-count columns `ζ, L₋₄, C(1,4), C(1,8), C(1,12)`.
pub fn table_families() -> Vec<Family> {
    vec![Family::Zeta, Family::Beta4, Family::C14m(1), Family::C14m(2), Family::C14m(3)]
}

/// Scans `families` on `[0, t_max]` and tabulates counts per `width` with
/// cumulative rows every 100.
pub fn count_table(
    t_max: f64,
    width: f64,
    families: &[Family],
    step: f64,
    policy: &TruncationPolicy,
) -> Result<(CountTable, Vec<Vec<ZeroRecord>>)> {
    if !(t_max > 0.0 && t_max <= 400.0) {
        return Err(Error::InvalidParameter(format!("t_max must lie in (0, 400], got {t_max}")));
    }
    let zeros = scan_families(families, (0.0, t_max), step, policy)?;
    let table = CountTable::from_zeros(families, &zeros, t_max, width, 100f64.max(width))?;
    Ok((table, zeros))
}
