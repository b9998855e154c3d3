use std::cmp::Ordering;

use rug::ops::Pow;
use rug::Integer;

use super::floor::{cmp_pow, floor_pow, floor_root_pow};
use crate::arith_core::{build_sieve, segments, FactorSieve};
use crate::error::{domain, Error, Result};
use crate::params::{make_params, GammaParams, DEFAULT_EPSILON, DEFAULT_ETA};

/// Ceiling on `x` for operations that walk every prime up to `x^γ`.
pub const COUNT_X_MAX: u64 = 1_000_000_000;
/// Ceiling on `x` for enumerating the eight-prime set.
pub const B_X_MAX: u64 = 1_000_000_000_000;

const P_SEGMENT: u64 = 1 << 18;

/// Desk-scale realization of `𝒜 = {[p^{1/γ}] : p ≤ x^γ}`.
#[derive(Clone, Debug)]
pub struct PsInstance {
    pub x: u64,
    pub gamma: f64,
    pub params: GammaParams,
    /// `⌊x^γ⌋`, the largest admissible prime bound.
    pub p_max: u64,
    /// Largest integer strictly below `z = x^{1/17.41}`.
    pub below_z: u64,
    /// `⌊x^ξ⌋`, the largest modulus in the level of distribution.
    pub d_max: u64,
}

impl PsInstance {
    pub fn new(x: u64, gamma: f64) -> Result<Self> {
        Self::with_params(x, make_params(gamma, DEFAULT_ETA, DEFAULT_EPSILON)?)
    }

    pub fn with_params(x: u64, params: GammaParams) -> Result<Self> {
        if x < 1000 {
            return Err(domain(format!("x={x} below the desk-scale floor 1000")));
        }
        if x > B_X_MAX {
            return Err(Error::Resource { what: format!("scale x={x}"), limit: B_X_MAX });
        }
        let gamma = params.gamma;
        Ok(PsInstance {
            x,
            gamma,
            params,
            p_max: floor_pow(x, gamma)?,
            below_z: below_sift_bound(x),
            d_max: floor_pow(x, params.xi)?,
        })
    }

    /// `q < x^{1/17.41}`, decided exactly as `q^1741 < x^100`.
    pub fn is_below_z(&self, q: u64) -> bool {
        q <= self.below_z
    }

    /// `p < x^{1/u}`, the range of primes carrying a weight penalty.
    pub fn is_below_weight_cut(&self, p: u64) -> Result<bool> {
        Ok(cmp_pow(p, self.params.u, self.x)? == Ordering::Less)
    }

    pub fn z(&self) -> f64 {
        (self.x as f64).powf(self.params.z_exp)
    }

    pub(crate) fn require_countable(&self) -> Result<()> {
        if self.x > COUNT_X_MAX {
            return Err(Error::Resource { what: format!("counting scale x={}", self.x), limit: COUNT_X_MAX });
        }
        Ok(())
    }

    /// Primes `≤ x^γ` in ascending order, one segment at a time, each paired
    /// with a factor sieve covering the corresponding `a = [p^{1/γ}]` values.
    pub fn scan<T>(&self, mut visit: impl FnMut(&[u64], &[u64], &FactorSieve) -> Result<T>) -> Result<Vec<T>> {
        self.require_countable()?;
        let mut out = Vec::new();
        if self.p_max < 2 {
            return Ok(out);
        }
        for seg in segments(2, self.p_max.max(3), P_SEGMENT)? {
            let primes: Vec<u64> = seg.primes().filter(|&p| p <= self.p_max).collect();
            if primes.is_empty() {
                continue;
            }
            let a: Vec<u64> = primes
                .iter()
                .map(|&p| floor_root_pow(p, self.gamma))
                .collect::<Result<_>>()?;
            let lo = a[0].max(2);
            let hi = (*a.last().unwrap()).max(lo + 1);
            let fs = build_sieve(lo, hi)?;
            out.push(visit(&primes, &a, &fs)?);
        }
        Ok(out)
    }
}

/// Largest `q` with `q^1741 < x^100`.
fn below_sift_bound(x: u64) -> u64 {
    let xp = Integer::from(Integer::from(x).pow(100u32));
    let lt = |q: u64| Integer::from(Integer::from(q).pow(1741u32)) < xp;
    let mut q = ((x as f64).powf(100.0 / 1741.0)).floor() as u64;
    while q > 0 && !lt(q) {
        q -= 1;
    }
    while lt(q + 1) {
        q += 1;
    }
    q
}
