//! Angular lattice sums over the square lattice.
//!
//! Everything is reduced to the generators `C(4k,1;s)` (see [`algebra`]) and
//! the generators come from the Kober expansion in [`kober`].

pub mod algebra;
mod brute;
mod cache;
mod kober;
mod policy;

pub use algebra::{
    appendix_table, c14m_weights, chebyshev_t_coeffs, recurrence_c, CosineCombination, Rational, Recurrence,
    SumSpec,
};
pub use brute::{brute_force, BruteForceValue};
pub use cache::BesselCache;
pub use kober::{c01, c01_product, c01_with, c2n1, c2n1_with, SumValue};
pub use policy::TruncationPolicy;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest `m` accepted by [`c14m`].
pub const MAX_C14M_ORDER: u32 = 8;

/// Generators `C(4k,1;s)` for `k = 0..=k_max`, from one shared evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Generators {
    pub s: Complex64,
    pub values: Vec<Complex64>,
    pub error_estimate: f64,
    pub p_used: usize,
}

impl Generators {
    pub fn eval(s: Complex64, k_max: u32, policy: &TruncationPolicy, cache: &BesselCache) -> Result<Self> {
        let orders: Vec<u32> = (0..=k_max).map(|k| 2 * k).collect();
        let (values, err, p) = kober::kober_orders(s, &orders, policy, cache)?;
        Ok(Self {
            s,
            values,
            error_estimate: err,
            p_used: p,
        })
    }

    /// `Σ w_k C(4k,1;s)`.
    pub fn combine(&self, weights: &[Rational]) -> Result<Complex64> {
        if weights.len() > self.values.len() {
            return Err(Error::InvalidParameter(format!(
                "combination needs {} generators, only {} evaluated",
                weights.len(),
                self.values.len()
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, v) in weights.iter().zip(&self.values) {
            acc += v * w.to_f64().unwrap();
        }
        Ok(acc)
    }

    /// `C(1,4m;s)`; `m = 0` gives `C(0,1;s)`.
    pub fn c14m(&self, m: u32) -> Result<Complex64> {
        self.combine(&c14m_weights(m)?)
    }
}

/// `C(1,4m;s) = Σ' cos(4mθ) / r^{2s}` via `T_{4m}`.
pub fn c14m(m: u32, s: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(c14m_with(m, s, policy, None)?.value)
}

pub fn c14m_with(m: u32, s: Complex64, policy: &TruncationPolicy, cache: Option<&BesselCache>) -> Result<SumValue> {
    if m == 0 || m > MAX_C14M_ORDER {
        return Err(Error::InvalidParameter(format!("c14m needs 1 <= m <= {MAX_C14M_ORDER}, got {m}")));
    }
    let local;
    let cache = match cache {
        Some(c) => c,
        None => {
            local = BesselCache::default();
            &local
        }
    };
    let g = Generators::eval(s, m, policy, cache)?;
    Ok(SumValue {
        value: g.c14m(m)?,
        error_estimate: g.error_estimate,
        p_used: g.p_used,
        near_pole: kober::near_pole(s),
    })
}

/// Largest polynomial degree that the tabulated systems reach.
pub const SYSTEM_MAX_DEGREE: u32 = 10;

/// Weights of `spec` over `[C(0,1), C(4,1), C(8,1)]`: the stored table,
/// or the same reduction applied to an untabulated member of the systems.
pub fn system_weights(spec: &SumSpec) -> Result<[Rational; 3]> {
    if let Some(w) = algebra::table_weights(spec) {
        return Ok(w);
    }
    let weights = spec.generator_weights()?;
    if spec.degree() > SYSTEM_MAX_DEGREE || weights.len() > 3 {
        return Err(Error::UnsupportedSum(format!(
            "{spec} reduces to C(4k,1) with k up to {}; only C(0,1), C(4,1), C(8,1) are tabulated",
            weights.len() - 1
        )));
    }
    let mut out = [Rational::from_integer(0); 3];
    for (o, w) in out.iter_mut().zip(weights) {
        *o = w;
    }
    Ok(out)
}

/// Any sum from the order 0–10 systems.
pub fn system_sum(spec: SumSpec, s: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    Ok(system_sum_with(spec, s, policy, None)?.value)
}

pub fn system_sum_with(
    spec: SumSpec,
    s: Complex64,
    policy: &TruncationPolicy,
    cache: Option<&BesselCache>,
) -> Result<SumValue> {
    let w = system_weights(&spec)?;
    let zero = Rational::from_integer(0);
    let k_max = w.iter().rposition(|x| *x != zero);
    let Some(k_max) = k_max else {
        return Ok(SumValue {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            p_used: 0,
            near_pole: false,
        });
    };
    let local;
    let cache = match cache {
        Some(c) => c,
        None => {
            local = BesselCache::default();
            &local
        }
    };
    let g = Generators::eval(s, k_max as u32, policy, cache)?;
    Ok(SumValue {
        value: g.combine(&w[..=k_max])?,
        error_estimate: g.error_estimate,
        p_used: g.p_used,
        near_pole: kober::near_pole(s),
    })
}
