//! Exact polynomial algebra behind the reductions of angular sums to the
//! generators `C(4k,1;s)`.
//!
//! Every supported sum is `Σ' P(cos θ) / (p₁²+p₂²)^s` for an integer
//! polynomial `P`. Odd powers of `cos θ` vanish by the `p₁ → -p₁` symmetry,
//! and `Σ' cos^{2j} θ / r^{2s} = C(2j,1;s)`, so the sum becomes a rational
//! combination of `C(2j,1;s)`. The orders `2j ≡ 2 (mod 4)` are then removed
//! with the binomial recurrence, leaving only `C(4k,1;s)`.

use num_rational::Ratio;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Highest polynomial degree handled exactly in `i128`.
pub const MAX_DEGREE: u32 = 64;

/// Dense integer polynomial in `c = cos θ`, lowest power first.
pub type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn poly_mul(a: &[i128], b: &[i128]) -> Poly {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_pow(base: &[i128], e: u32) -> Poly {
    let mut acc = vec![1i128];
    for _ in 0..e {
        acc = poly_mul(&acc, base);
    }
    acc
}

fn check_degree(d: u32) -> Result<()> {
    if d > MAX_DEGREE {
        Err(Error::DegreeOverflow(d))
    } else {
        Ok(())
    }
}

/// Coefficients of the Chebyshev polynomial `T_degree(x)`, lowest power first.
pub fn chebyshev_t_coeffs(degree: u32) -> Result<Vec<i128>> {
    check_degree(degree)?;
    let mut prev = vec![1i128];
    if degree == 0 {
        return Ok(prev);
    }
    let mut cur = vec![0i128, 1];
    for _ in 1..degree {
        // T_{k+1} = 2x T_k - T_{k-1}
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Coefficients of the Chebyshev polynomial of the second kind `U_degree(x)`.
pub fn chebyshev_u_coeffs(degree: u32) -> Result<Vec<i128>> {
    check_degree(degree)?;
    let mut prev = vec![1i128];
    if degree == 0 {
        return Ok(prev);
    }
    let mut cur = vec![0i128, 2];
    for _ in 1..degree {
        let mut next = vec![0i128; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn binomial(n: u32, k: u32) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n as i128 - i) / (i + 1);
    }
    acc
}

/// Rational combination of the sums `C(2j,1;s)`, keyed by the order `2j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CosineCombination(pub BTreeMap<u32, Rational>);

impl CosineCombination {
    pub fn add(&mut self, order: u32, w: Rational) {
        let e = self.0.entry(order).or_insert_with(Rational::zero);
        *e += w;
        if e.is_zero() {
            self.0.remove(&order);
        }
    }

    /// From a polynomial in `cos θ`; odd powers are dropped (their sums vanish).
    pub fn from_poly(p: &[i128]) -> Self {
        let mut out = Self::default();
        for (k, &c) in p.iter().enumerate() {
            if k % 2 == 0 && c != 0 {
                out.add(k as u32, Rational::from_integer(c));
            }
        }
        out
    }

    pub fn max_order(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Rewrite in terms of `C(4k,1;s)` only. Returned weights are indexed by `k`.
    pub fn to_generators(&self) -> Vec<Rational> {
        let mut work = self.clone();
        loop {
            let top = work
                .0
                .keys()
                .rev()
                .copied()
                .find(|o| o % 4 == 2);
            let Some(order) = top else { break };
            let w = work.0.remove(&order).unwrap();
            for (lo, lw) in recurrence_c(order / 2).terms() {
                work.add(lo, w * lw);
            }
        }
        let kmax = (work.max_order() / 4) as usize;
        let mut out = vec![Rational::zero(); kmax + 1];
        for (order, w) in work.0 {
            out[(order / 4) as usize] = w;
        }
        out
    }
}

/// One step of the binomial recurrence for `C(2n,1;s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    /// `C(2n,1;s) = Σ w_l C(2l,1;s)` over lower orders (odd `n`).
    Expression { order: u32, terms: Vec<(u32, Rational)> },
    /// `Σ w_l C(2l,1;s) = 0` (even `n`): a consistency constraint only.
    Identity { terms: Vec<(u32, Rational)> },
}

impl Recurrence {
    /// Right-hand side of an expression or the terms of an identity.
    pub fn terms(&self) -> Vec<(u32, Rational)> {
        match self {
            Recurrence::Expression { terms, .. } | Recurrence::Identity { terms } => terms.clone(),
        }
    }
}

/// Expanding `cos^{2n}θ = (1 - sin²θ)^n` binomially and using the lattice
/// symmetry `x ↔ y`. For odd `n` this yields `C(2n,1)` in lower orders; for
/// even `n` the top term cancels and only an identity remains.
pub fn recurrence_c(n: u32) -> Recurrence {
    let sign = |l: u32| if l % 2 == 0 { 1 } else { -1 };
    let terms: Vec<(u32, Rational)> = (0..n)
        .map(|l| (2 * l, Rational::from_integer(sign(l) * binomial(n, l))))
        .collect();
    if n % 2 == 1 {
        let half = Rational::new(1, 2);
        Recurrence::Expression {
            order: 2 * n,
            terms: terms.into_iter().map(|(o, w)| (o, w * half)).collect(),
        }
    } else {
        Recurrence::Identity { terms }
    }
}

/// Which angular sum is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SumSpec {
    /// `C(n,m;s) = Σ' cosⁿ(mθ) / r^{2s}`.
    CosPow { n: u32, m: u32 },
    /// `S(n,m;s) = Σ' sinⁿ(mθ) / r^{2s}`.
    SinPow { n: u32, m: u32 },
    /// `Σ' p₁^{2a} p₂^{2b} / r^{2(s+a+b)}`.
    MixedMoment { a: u32, b: u32 },
}

impl std::fmt::Display for SumSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SumSpec::CosPow { n, m } => write!(f, "C({n},{m})"),
            SumSpec::SinPow { n, m } => write!(f, "S({n},{m})"),
            SumSpec::MixedMoment { a, b } => write!(f, "M(p1^{}, p2^{})", 2 * a, 2 * b),
        }
    }
}

impl SumSpec {
    /// Degree of the integrand as a polynomial in `cos θ`.
    pub fn degree(&self) -> u32 {
        match *self {
            SumSpec::CosPow { n, m } | SumSpec::SinPow { n, m } => n.saturating_mul(m),
            SumSpec::MixedMoment { a, b } => 2 * (a + b),
        }
    }

    /// The integrand as a polynomial in `cos θ`. Odd sine powers give the
    /// zero polynomial: `θ → -θ` flips their sign.
    pub fn polynomial(&self) -> Result<Poly> {
        check_degree(self.degree())?;
        match *self {
            SumSpec::CosPow { n, m } => {
                if m == 0 {
                    return Err(Error::InvalidParameter("m must be positive".into()));
                }
                Ok(poly_pow(&chebyshev_t_coeffs(m)?, n))
            }
            SumSpec::SinPow { n, m } => {
                if m == 0 {
                    return Err(Error::InvalidParameter("m must be positive".into()));
                }
                if n % 2 == 1 {
                    return Ok(vec![0]);
                }
                // sin(mθ) = sin θ · U_{m-1}(cos θ), sin²θ = 1 - c²
                let u = poly_pow(&chebyshev_u_coeffs(m - 1)?, n);
                Ok(poly_mul(&u, &poly_pow(&[1, 0, -1], n / 2)))
            }
            SumSpec::MixedMoment { a, b } => {
                let mut ca = vec![0i128; 2 * a as usize + 1];
                ca[2 * a as usize] = 1;
                Ok(poly_mul(&ca, &poly_pow(&[1, 0, -1], b)))
            }
        }
    }

    /// Rational weights over the generators `C(4k,1;s)`, `k = 0, 1, …`.
    pub fn generator_weights(&self) -> Result<Vec<Rational>> {
        let p = self.polynomial()?;
        Ok(CosineCombination::from_poly(&p).to_generators())
    }
}

/// Weights of `C(1,4m;s)` over the generators, from `T_{4m}`.
pub fn c14m_weights(m: u32) -> Result<Vec<Rational>> {
    if m == 0 {
        return Ok(vec![Rational::one()]);
    }
    SumSpec::CosPow { n: 1, m: 4 * m }.generator_weights()
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// The tabulated relations of the order 0–10 systems, as weights over
/// `[C(0,1), C(4,1), C(8,1)]`.
pub fn appendix_table() -> Vec<(SumSpec, [Rational; 3])> {
    use SumSpec::*;
    let z = r(0, 1);
    vec![
        (CosPow { n: 0, m: 1 }, [r(1, 1), z, z]),
        (CosPow { n: 2, m: 1 }, [r(1, 2), z, z]),
        (CosPow { n: 4, m: 1 }, [z, r(1, 1), z]),
        (CosPow { n: 1, m: 4 }, [r(-3, 1), r(8, 1), z]),
        (CosPow { n: 2, m: 2 }, [r(-1, 1), r(4, 1), z]),
        (SinPow { n: 2, m: 2 }, [r(2, 1), r(-4, 1), z]),
        (CosPow { n: 6, m: 1 }, [r(-1, 4), r(3, 2), z]),
        (CosPow { n: 2, m: 3 }, [r(1, 2), z, z]),
        (SinPow { n: 2, m: 3 }, [r(1, 2), z, z]),
        (MixedMoment { a: 1, b: 1 }, [r(1, 2), r(-1, 1), z]),
        (MixedMoment { a: 2, b: 1 }, [r(1, 4), r(-1, 2), z]),
        (MixedMoment { a: 1, b: 2 }, [r(1, 4), r(-1, 2), z]),
        (CosPow { n: 8, m: 1 }, [z, z, r(1, 1)]),
        (CosPow { n: 1, m: 8 }, [r(49, 1), r(-224, 1), r(128, 1)]),
        (CosPow { n: 2, m: 4 }, [r(25, 1), r(-112, 1), r(64, 1)]),
        (SinPow { n: 2, m: 4 }, [r(-24, 1), r(112, 1), r(-64, 1)]),
        (MixedMoment { a: 3, b: 1 }, [r(-1, 4), r(3, 2), r(-1, 1)]),
        (MixedMoment { a: 2, b: 2 }, [r(1, 2), r(-2, 1), r(1, 1)]),
        (CosPow { n: 10, m: 1 }, [r(1, 2), r(-5, 2), r(5, 2)]),
        (MixedMoment { a: 4, b: 1 }, [r(-1, 2), r(5, 2), r(-3, 2)]),
        (MixedMoment { a: 3, b: 2 }, [r(1, 4), r(-1, 1), r(1, 2)]),
        (CosPow { n: 2, m: 5 }, [r(1, 2), z, z]),
        (SinPow { n: 2, m: 5 }, [r(1, 2), z, z]),
    ]
}

/// Look up `spec` in the tabulated system relations.
pub fn table_weights(spec: &SumSpec) -> Option<[Rational; 3]> {
    appendix_table()
        .into_iter()
        .find(|(s, _)| s == spec)
        .map(|(_, w)| w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_small_degrees() {
        assert_eq!(chebyshev_t_coeffs(0).unwrap(), vec![1]);
        assert_eq!(chebyshev_t_coeffs(4).unwrap(), vec![1, 0, -8, 0, 8]);
        let t8 = chebyshev_t_coeffs(8).unwrap();
        assert_eq!(t8, vec![1, 0, -32, 0, 160, 0, -256, 0, 128]);
        assert!(matches!(chebyshev_t_coeffs(65), Err(Error::DegreeOverflow(65))));
        let t64 = chebyshev_t_coeffs(64).unwrap();
        assert_eq!(t64[64], 1i128 << 63);
        // T_n(1) = 1
        assert_eq!(t64.iter().sum::<i128>(), 1);
    }

    #[test]
    fn recurrence_examples() {
        let Recurrence::Expression { order, terms } = recurrence_c(3) else { panic!() };
        assert_eq!(order, 6);
        let mut comb = CosineCombination::default();
        for (o, w) in terms {
            comb.add(o, w);
        }
        assert_eq!(comb.to_generators(), vec![r(-1, 4), r(3, 2)]);

        let Recurrence::Expression { terms, .. } = recurrence_c(5) else { panic!() };
        let mut comb = CosineCombination::default();
        for (o, w) in terms {
            comb.add(o, w);
        }
        assert_eq!(comb.to_generators(), vec![r(1, 2), r(-5, 2), r(5, 2)]);

        let Recurrence::Identity { terms } = recurrence_c(2) else { panic!() };
        let mut comb = CosineCombination::default();
        for (o, w) in terms {
            comb.add(o, w);
        }
        assert!(comb.to_generators().iter().all(|w| w.is_zero()));
    }

    #[test]
    fn table_rederives_exactly() {
        for (spec, w) in appendix_table() {
            let mut derived = spec.generator_weights().unwrap();
            derived.resize(3, Rational::zero());
            assert_eq!(derived, w.to_vec(), "{spec}");
        }
    }

    #[test]
    fn c14m_small_orders() {
        assert_eq!(c14m_weights(1).unwrap(), vec![r(-3, 1), r(8, 1)]);
        assert_eq!(c14m_weights(2).unwrap(), vec![r(49, 1), r(-224, 1), r(128, 1)]);
    }

    #[test]
    fn odd_sine_powers_vanish() {
        assert_eq!(SumSpec::SinPow { n: 3, m: 2 }.generator_weights().unwrap(), vec![r(0, 1)]);
        // cos(2θ) flips sign under θ → π/2 - θ, so C(1,2) = 0
        let w = SumSpec::CosPow { n: 1, m: 2 }.generator_weights().unwrap();
        assert!(w.iter().all(|x| x.is_zero()));
    }
}
