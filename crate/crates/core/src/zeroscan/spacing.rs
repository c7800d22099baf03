//! Nearest-neighbour spacing statistics of zero lists.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{Family, ZeroRecord};
use crate::error::{Error, Result};

/// Fewest zeros [`spacing_stats`] accepts.
pub const MIN_ZEROS: usize = 50;
pub const DEFAULT_BIN_WIDTH: f64 = 0.2;
/// Gaps on each side used for the local mean spacing.
pub const UNFOLD_HALF_WINDOW: usize = 10;

/// Unitary-ensemble Wigner surmise `P(S) = (32S²/π²) exp(-4S²/π)`, the
/// normalisation for which both `∫P` and `∫SP` equal one.
pub fn wigner_surmise(s: f64) -> f64 {
    32.0 * s * s / (PI * PI) * (-4.0 * s * s / PI).exp()
}

/// `(∫₀^∞ P, ∫₀^∞ S P)` by composite Simpson on `[0, 12]`.
pub fn wigner_moments() -> (f64, f64) {
    let n = 24_000;
    let h = 12.0 / n as f64;
    let (mut m0, mut m1) = (0.0, 0.0);
    for i in 0..=n {
        let s = i as f64 * h;
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let p = wigner_surmise(s);
        m0 += w * p;
        m1 += w * s * p;
    }
    (m0 * h / 3.0, m1 * h / 3.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingHistogram {
    pub family: Family,
    /// Gaps divided by the local mean gap, then scaled to mean one.
    pub spacings: Vec<f64>,
    pub bin_edges: Vec<f64>,
    pub densities: Vec<f64>,
    /// Wigner surmise at the bin centres.
    pub wigner: Vec<f64>,
}

impl SpacingHistogram {
    pub fn mean(&self) -> f64 {
        self.spacings.iter().sum::<f64>() / self.spacings.len() as f64
    }

    /// `∫ density` over the bins.
    pub fn total_mass(&self) -> f64 {
        self.densities
            .iter()
            .zip(self.bin_edges.windows(2))
            .map(|(d, e)| d * (e[1] - e[0]))
            .sum()
    }
}

pub fn spacing_stats(zeros: &[ZeroRecord]) -> Result<SpacingHistogram> {
    spacing_stats_with(zeros, DEFAULT_BIN_WIDTH)
}

/// Spacing histogram of a single family's zeros.
///
/// The density of zeros grows like `log t`, so each gap is first divided by
/// the mean of the surrounding `2·UNFOLD_HALF_WINDOW + 1` gaps.
pub fn spacing_stats_with(zeros: &[ZeroRecord], bin_width: f64) -> Result<SpacingHistogram> {
    if zeros.len() < MIN_ZEROS {
        return Err(Error::InsufficientData {
            needed: MIN_ZEROS,
            got: zeros.len(),
        });
    }
    if !(bin_width > 0.0) {
        return Err(Error::InvalidParameter(format!("bin width must be positive, got {bin_width}")));
    }
    let family = zeros[0].family;
    if zeros.iter().any(|z| z.family != family) {
        return Err(Error::InvalidParameter("spacing statistics need a single family".into()));
    }
    let mut ts: Vec<f64> = zeros.iter().map(|z| z.t).collect();
    ts.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = ts.windows(2).map(|w| w[1] - w[0]).collect();
    let n = gaps.len();
    let mut spacings: Vec<f64> = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(UNFOLD_HALF_WINDOW);
            let hi = (i + UNFOLD_HALF_WINDOW + 1).min(n);
            let local = gaps[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
            gaps[i] / local
        })
        .collect();
    let mean = spacings.iter().sum::<f64>() / n as f64;
    for s in &mut spacings {
        *s /= mean;
    }
    let top = spacings.iter().cloned().fold(0.0, f64::max);
    let nbins = ((top / bin_width).floor() as usize + 1).max(1);
    let bin_edges: Vec<f64> = (0..=nbins).map(|i| i as f64 * bin_width).collect();
    let mut counts = vec![0usize; nbins];
    for &s in &spacings {
        counts[((s / bin_width) as usize).min(nbins - 1)] += 1;
    }
    let densities = counts.iter().map(|&c| c as f64 / (n as f64 * bin_width)).collect();
    let wigner = (0..nbins).map(|i| wigner_surmise((i as f64 + 0.5) * bin_width)).collect();
    Ok(SpacingHistogram {
        family,
        spacings,
        bin_edges,
        densities,
        wigner,
    })
}
