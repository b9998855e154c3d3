use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Exponent `ε` in the `X^ε`-type factors of the empirical bounds.
pub const BOUND_EPS: f64 = 0.05;

#[derive(Clone, Debug, Serialize)]
pub struct LatticeCount {
    pub j: u64,
    pub l: u64,
    pub d: u64,
    pub delta: f64,
    pub gamma: f64,
    pub count: u64,
    pub bound: f64,
    pub ratio: f64,
}

fn dyadic(p: u64) -> std::ops::RangeInclusive<u64> {
    p / 2 + 1..=p
}

/// Sorted values `h ℓ^{1/γ}/d` over `h ∼ J`, `ℓ ∼ L`, `d ∼ D`. The ratio
/// `h/d` is formed first so equal fractions give identical floats.
fn values(j: u64, l: u64, d: u64, gamma: f64) -> Vec<f64> {
    let mut v = Vec::new();
    for ll in dyadic(l) {
        let lp = (ll as f64).powf(1.0 / gamma);
        for h in dyadic(j) {
            for dd in dyadic(d) {
                v.push((h as f64 / dd as f64) * lp);
            }
        }
    }
    v.sort_by(f64::total_cmp);
    v
}

/// Ordered pairs of sorted values within `delta`, by a sliding window.
fn window_pairs(v: &[f64], delta: f64, inclusive: bool) -> u64 {
    let near = |a: f64, b: f64| if inclusive { b - a <= delta } else { b - a < delta };
    let mut count = 0u64;
    let mut hi = 0;
    for i in 0..v.len() {
        if hi < i {
            hi = i;
        }
        while hi + 1 < v.len() && near(v[i], v[hi + 1]) {
            hi += 1;
        }
        // pairs (i, k) with k > i inside the window, counted both ways
        count += 2 * (hi - i) as u64;
        if inclusive || delta > 0.0 {
            count += 1;
        }
    }
    count
}

fn check(j: u64, l: u64, d: u64, delta: f64, gamma: f64) -> Result<()> {
    for (name, v) in [("J", j), ("L", l), ("D", d)] {
        if v < 2 {
            return Err(domain(format!("{name}={v} leaves an empty dyadic range")));
        }
        if v > 32 {
            return Err(Error::Resource { what: format!("lattice dimension {name}={v}"), limit: 32 });
        }
    }
    if !(delta >= 0.0) {
        return Err(domain(format!("Δ={delta} must be nonnegative")));
    }
    if !(gamma > 0.5 && gamma < 1.0) {
        return Err(domain(format!("gamma={gamma} outside (1/2, 1)")));
    }
    Ok(())
}

fn bound(j: u64, l: u64, d: u64, delta: f64, gamma: f64) -> f64 {
    let (jf, lf, df) = (j as f64, l as f64, d as f64);
    (jf * df).powf(BOUND_EPS) * (jf * df * lf + delta * df.powi(3) * jf * lf.powf(2.0 - 1.0 / gamma))
}

/// Number of sextuples `(h₁, h₂, ℓ₁, ℓ₂, d₁, d₂)` with
/// `|h₁ℓ₁^{1/γ}/d₁ − h₂ℓ₂^{1/γ}/d₂| < Δ`, and the lemma's bound.
pub fn lattice_count_oracle(j: u64, l: u64, d: u64, delta: f64, gamma: f64) -> Result<LatticeCount> {
    check(j, l, d, delta, gamma)?;
    let count = window_pairs(&values(j, l, d, gamma), delta, false);
    let b = bound(j, l, d, delta, gamma);
    Ok(LatticeCount { j, l, d, delta, gamma, count, bound: b, ratio: count as f64 / b })
}

/// As [`lattice_count_oracle`] with `≤ Δ`, so `Δ = 0` counts exact coincidences.
pub fn lattice_count_inclusive(j: u64, l: u64, d: u64, delta: f64, gamma: f64) -> Result<LatticeCount> {
    check(j, l, d, delta, gamma)?;
    let count = window_pairs(&values(j, l, d, gamma), delta, true);
    let b = bound(j, l, d, delta, gamma);
    Ok(LatticeCount { j, l, d, delta, gamma, count, bound: b, ratio: count as f64 / b })
}
