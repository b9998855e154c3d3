//! Exhaustive certificate that every admissible eight-prime exponent vector
//! has a partial sum in `[α₀, β₀]`.
//!
//! A point is `t₁ ≤ ⋯ ≤ t₈` with `tᵢ ≥ 1/17.41` and `1 − η_s ≤ Σt ≤ 1`; on a
//! grid of spacing `step` every coordinate is an integer number of units.
//! The search tracks reachable subset sums of the chosen prefix as a bitset.
//! Once a prefix already hits the window with margin at least the running
//! minimum, its completions are counted rather than visited: they all hit,
//! and none can lower the minimum margin.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::params::GammaParams;
use crate::SIFT_RATIO;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindowConstants {
    pub alpha0: f64,
    pub beta0: f64,
}

impl Default for WindowConstants {
    fn default() -> Self {
        WindowConstants { alpha0: 0.639_592_592_6, beta0: 0.783_787_037_02 }
    }
}

impl WindowConstants {
    pub fn new(alpha0: f64, beta0: f64) -> Result<Self> {
        if !(0.0 < alpha0 && alpha0 < beta0 && beta0 < 1.0) {
            return Err(domain(format!("window [{alpha0}, {beta0}] must satisfy 0 < α₀ < β₀ < 1")));
        }
        Ok(WindowConstants { alpha0, beta0 })
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.alpha0 && s <= self.beta0
    }

    /// Distance from `s` to the nearer window edge, negative outside.
    pub fn margin(&self, s: f64) -> f64 {
        (s - self.alpha0).min(self.beta0 - s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexPoint {
    pub t: [f64; 8],
}

impl SimplexPoint {
    pub fn new(t: [f64; 8], eta_s: f64) -> Result<Self> {
        let lo = 1.0 / SIFT_RATIO;
        if t.windows(2).any(|w| w[0] > w[1]) {
            return Err(domain("coordinates must be nondecreasing"));
        }
        if t[0] < lo - 1e-12 {
            return Err(domain(format!("t₁={} below 1/17.41", t[0])));
        }
        let s: f64 = t.iter().sum();
        if s > 1.0 + 1e-12 || s < 1.0 - eta_s - 1e-12 {
            return Err(domain(format!("Σt={s} outside [1 − η_s, 1]")));
        }
        Ok(SimplexPoint { t })
    }

    pub fn subset_sum(&self, mask: u8) -> f64 {
        (0..8).filter(|i| mask >> i & 1 == 1).map(|i| self.t[i]).sum()
    }
}

/// Nonempty proper subsets of `{1..8}` as bitmasks (bit `i` is index `i+1`),
/// ordered by size and then lexicographically by sorted index list.
pub fn canonical_subsets() -> &'static [u8] {
    static ORDER: OnceLock<Vec<u8>> = OnceLock::new();
    ORDER.get_or_init(|| {
        let mut v: Vec<u8> = (1..255u8).collect();
        let key = |m: &u8| {
            let idx: Vec<u8> = (0..8).filter(|i| m >> i & 1 == 1).collect();
            (m.count_ones(), idx)
        };
        v.sort_by_key(key);
        v
    })
}

pub fn mask_indices(mask: u8) -> Vec<usize> {
    (0..8).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetHit {
    pub hit: bool,
    pub witness: Option<u8>,
}

pub fn subset_hit(pt: &SimplexPoint, w: &WindowConstants) -> SubsetHit {
    let witness = canonical_subsets().iter().copied().find(|&m| w.contains(pt.subset_sum(m)));
    SubsetHit { hit: witness.is_some(), witness }
}

const WORDS: usize = 16;
type Bits = [u64; WORDS];

fn shl_or(b: &Bits, k: usize, nw: usize) -> Bits {
    let mut out = *b;
    let (ws, bs) = (k / 64, k % 64);
    for i in (ws..nw).rev() {
        let mut v = b[i - ws] << bs;
        if bs > 0 && i > ws {
            v |= b[i - ws - 1] >> (64 - bs);
        }
        out[i] |= v;
    }
    out
}

/// Smallest set bit in `[lo, hi]`.
fn next_set(b: &Bits, lo: usize, hi: usize) -> Option<usize> {
    if lo > hi {
        return None;
    }
    let mut w = lo / 64;
    let mut word = b[w] & (!0u64 << (lo % 64));
    loop {
        if word != 0 {
            let i = w * 64 + word.trailing_zeros() as usize;
            return (i <= hi).then_some(i);
        }
        w += 1;
        if w * 64 > hi {
            return None;
        }
        word = b[w];
    }
}

/// Largest set bit in `[lo, hi]`.
fn prev_set(b: &Bits, lo: usize, hi: usize) -> Option<usize> {
    if lo > hi {
        return None;
    }
    let mut w = hi / 64;
    let mut word = b[w] & (!0u64 >> (63 - hi % 64));
    loop {
        if word != 0 {
            let i = w * 64 + 63 - word.leading_zeros() as usize;
            return (i >= lo).then_some(i);
        }
        if w == 0 || (w - 1) * 64 + 63 < lo {
            return None;
        }
        w -= 1;
        word = b[w];
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub t: Vec<f64>,
    /// Every nonempty proper subset with its sum, in canonical order.
    pub subset_sums: Vec<(Vec<usize>, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub step: f64,
    pub eta_s: f64,
    pub window: WindowConstants,
    pub points_checked: u64,
    /// Points visited leaf by leaf, the rest were counted under a hitting prefix.
    pub points_visited: u64,
    pub counterexample_count: u64,
    /// The first `MAX_RECORDED` counterexamples in grid order.
    pub counterexamples: Vec<Counterexample>,
    /// Smallest over points of the best subset's distance into the window.
    pub min_margin: f64,
}

impl CertReport {
    pub fn ensure_certified(&self) -> Result<()> {
        match self.counterexamples.first() {
            None => Ok(()),
            Some(c) => Err(Error::Certification(format!(
                "{} counterexample(s); first t = {:?}",
                self.counterexample_count, c.t
            ))),
        }
    }
}

struct Grid {
    n: usize,
    nw: usize,
    kmin: usize,
    smin: usize,
    wlo: usize,
    whi: usize,
    center2: i64,
    /// `cum[r][m][s]`: nondecreasing length-`r` sequences with entries `≥ m`
    /// and sum `≤ s`.
    cum: Vec<Vec<Vec<u64>>>,
}

impl Grid {
    fn new(step: f64, eta_s: f64, w: &WindowConstants) -> Self {
        let n = (1.0 / step).round() as usize;
        let nf = n as f64;
        let kmin = (nf / SIFT_RATIO).ceil() as usize;
        let smin = (nf * (1.0 - eta_s) - 1e-9).ceil() as usize;
        let wlo = (w.alpha0 * nf - 1e-9).ceil() as usize;
        let whi = (w.beta0 * nf + 1e-9).floor() as usize;
        let mut cnt = vec![vec![vec![0u64; n + 1]; n + 2]; 8];
        for m in 0..=n + 1 {
            cnt[0][m][0] = 1;
        }
        for r in 1..8 {
            for m in (0..=n).rev() {
                for s in 0..=n {
                    let take = if m <= s { cnt[r - 1][m][s - m] } else { 0 };
                    cnt[r][m][s] = take + cnt[r][m + 1][s];
                }
            }
        }
        let cum = cnt
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.iter()
                            .scan(0u64, |a, &x| {
                                *a += x;
                                Some(*a)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Grid { n, nw: n / 64 + 1, kmin, smin, wlo, whi, center2: (wlo + whi) as i64, cum }
    }

    /// Completions of length `r`, entries `≥ m`, with sum in `[lo, hi]`.
    fn completions(&self, r: usize, m: usize, lo: usize, hi: usize) -> u64 {
        if lo > hi || m > self.n {
            return 0;
        }
        let c = &self.cum[r][m];
        c[hi] - if lo == 0 { 0 } else { c[lo - 1] }
    }

    /// Best in-window subset sum (nearest to the center), in units.
    fn best(&self, b: &Bits) -> Option<usize> {
        let c = (self.center2 / 2) as usize;
        let up = next_set(b, c, self.whi);
        let down = prev_set(b, self.wlo, c);
        match (down, up) {
            (Some(d), Some(u)) => {
                let dist = |x: usize| (2 * x as i64 - self.center2).abs();
                Some(if dist(d) <= dist(u) { d } else { u })
            }
            (d, u) => d.or(u),
        }
    }

    fn margin_units(&self, s: usize) -> usize {
        (s - self.wlo).min(self.whi - s)
    }

    /// Signed margin, negative outside the window.
    fn signed_margin(&self, s: usize) -> i64 {
        ((self.whi - self.wlo) as i64 - (2 * s as i64 - self.center2).abs()) / 2
    }
}

pub const MAX_RECORDED: usize = 32;

struct Acc {
    checked: u64,
    visited: u64,
    min_units: usize,
    bad_count: u64,
    bad: Vec<[usize; 8]>,
}

fn dfs(g: &Grid, k: usize, last: usize, sum: usize, bits: &Bits, t: &mut [usize; 8], acc: &mut Acc) {
    if k == 7 {
        return leaves(g, last, sum, bits, t, acc);
    }
    let remaining = 8 - k;
    let vmax = (g.n - sum) / remaining;
    for v in last.max(g.kmin)..=vmax {
        t[k] = v;
        let nb = shl_or(bits, v, g.nw);
        let s = sum + v;
        if let Some(b) = g.best(&nb) {
            if g.margin_units(b) >= acc.min_units {
                acc.checked += g.completions(7 - k, v, g.smin.saturating_sub(s), g.n - s);
                continue;
            }
        }
        dfs(g, k + 1, v, s, &nb, t, acc);
    }
}

/// Last coordinate: the best subset either avoids it (the prefix best) or
/// is a prefix subset shifted by it, found by a pointer that moves
/// monotonically as the shift grows.
fn leaves(g: &Grid, last: usize, sum: usize, bits: &Bits, t: &mut [usize; 8], acc: &mut Acc) {
    let mut elems = [0i64; 128];
    let mut len = 0;
    for (w, &word) in bits[..g.nw].iter().enumerate() {
        let mut x = word;
        while x != 0 {
            elems[len] = (w * 64 + x.trailing_zeros() as usize) as i64;
            len += 1;
            x &= x - 1;
        }
    }
    let prefix = g.best(bits).map_or(i64::MIN, |b| g.margin_units(b) as i64);
    let lo = last.max(g.kmin).max(g.smin.saturating_sub(sum));
    let hi = g.n - sum;
    let mut j = len - 1;
    for v in lo..=hi {
        let target2 = g.center2 - 2 * v as i64;
        while j > 0 && (2 * elems[j - 1] - target2).abs() <= (2 * elems[j] - target2).abs() {
            j -= 1;
        }
        let shifted = g.signed_margin(elems[j] as usize + v);
        let m = prefix.max(shifted);
        acc.checked += 1;
        acc.visited += 1;
        if m >= 0 {
            acc.min_units = acc.min_units.min(m as usize);
        } else {
            acc.bad_count += 1;
            if acc.bad.len() < MAX_RECORDED {
                t[7] = v;
                acc.bad.push(*t);
            }
        }
    }
}

/// Visit every grid point of the ordered region and confirm a subset hit.
pub fn exhaustive_certify(step: f64, eta_s: f64, w: &WindowConstants) -> Result<CertReport> {
    if !(1e-3..=1e-2).contains(&step) {
        return Err(domain(format!("step {step} outside [1e-3, 1e-2]")));
    }
    if ((1.0 / step).round() * step - 1.0).abs() > 1e-9 {
        return Err(domain(format!("step {step} must divide 1")));
    }
    if !(0.0..0.5).contains(&eta_s) {
        return Err(domain(format!("eta_s {eta_s} outside [0, 0.5)")));
    }
    let g = Grid::new(step, eta_s, w);
    let mut start = [0u64; WORDS];
    start[0] = 1;
    let firsts: Vec<usize> = (g.kmin..=g.n / 8).collect();
    let parts: Vec<Acc> = firsts
        .par_iter()
        .map(|&v| {
            let mut acc = Acc { checked: 0, visited: 0, min_units: usize::MAX, bad_count: 0, bad: Vec::new() };
            let mut t = [0usize; 8];
            t[0] = v;
            dfs(&g, 1, v, v, &shl_or(&start, v, g.nw), &mut t, &mut acc);
            acc
        })
        .collect();
    let mut checked = 0;
    let mut visited = 0;
    let mut min_units = usize::MAX;
    let mut bad = Vec::new();
    let mut bad_count = 0;
    for p in parts {
        bad_count += p.bad_count;
        checked += p.checked;
        visited += p.visited;
        min_units = min_units.min(p.min_units);
        bad.extend(p.bad);
        bad.truncate(MAX_RECORDED);
    }
    let nf = g.n as f64;
    let counterexamples = bad
        .into_iter()
        .map(|k| {
            let t: Vec<f64> = k.iter().map(|&u| u as f64 / nf).collect();
            let pt = SimplexPoint { t: t.clone().try_into().expect("eight coordinates") };
            let subset_sums = canonical_subsets().iter().map(|&m| (mask_indices(m), pt.subset_sum(m))).collect();
            Counterexample { t, subset_sums }
        })
        .collect::<Vec<_>>();
    // grid margin in real units, measured against the real window edges
    let min_margin = if min_units == usize::MAX {
        f64::NAN
    } else {
        let lo_edge = g.wlo as f64 / nf - w.alpha0;
        let hi_edge = w.beta0 - g.whi as f64 / nf;
        min_units as f64 / nf + lo_edge.min(hi_edge)
    };
    Ok(CertReport {
        step,
        eta_s,
        window: *w,
        points_checked: checked,
        points_visited: visited,
        counterexample_count: bad_count,
        counterexamples,
        min_margin,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SlackReport {
    pub gamma: f64,
    pub eta: f64,
    /// `α₀ − (5 − 5γ + 4ξ + η)`.
    pub lower_slack: f64,
    /// `(γ + ξ + 2)/4 − η − β₀`.
    pub upper_slack: f64,
    pub pass: bool,
}

/// Whether `[α₀, β₀]` sits inside the analytic window of the `𝔖₀` bound.
pub fn window_inside_analytic(p: &GammaParams, w: &WindowConstants) -> Result<SlackReport> {
    if !(p.gamma >= 0.989 && p.gamma < 1.0) {
        return Err(domain(format!("gamma={} outside [0.989, 1)", p.gamma)));
    }
    let lower_slack = w.alpha0 - (5.0 - 5.0 * p.gamma + 4.0 * p.xi + p.eta);
    let upper_slack = (p.gamma + p.xi + 2.0) / 4.0 - p.eta - w.beta0;
    Ok(SlackReport {
        gamma: p.gamma,
        eta: p.eta,
        lower_slack,
        upper_slack,
        pass: lower_slack >= 0.0 && upper_slack >= 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use proptest::prelude::*;

    /// Leaf-by-leaf reference: every grid point, all 254 subsets in floating point.
    fn naive(step: f64, eta_s: f64, w: &WindowConstants) -> (u64, usize, f64) {
        let n = (1.0 / step).round() as usize;
        let kmin = (n as f64 / SIFT_RATIO).ceil() as usize;
        let smin = (n as f64 * (1.0 - eta_s) - 1e-9).ceil() as usize;
        let mut count = 0;
        let mut bad = 0;
        let mut worst = f64::INFINITY;
        let mut t = [0usize; 8];
        fn rec(k: usize, lo: usize, sum: usize, n: usize, kmin: usize, smin: usize, t: &mut [usize; 8], f: &mut dyn FnMut(&[usize; 8])) {
            if k == 8 {
                if sum >= smin {
                    f(t);
                }
                return;
            }
            for v in lo.max(kmin)..=(n - sum) / (8 - k) {
                t[k] = v;
                rec(k + 1, v, sum + v, n, kmin, smin, t, f);
            }
        }
        rec(0, 0, 0, n, kmin, smin, &mut t, &mut |t| {
            count += 1;
            let units = |m: u8| (0..8).filter(|i| m >> i & 1 == 1).map(|i| t[i]).sum::<usize>();
            let best = (1..255u8).map(|m| w.margin(units(m) as f64 / n as f64)).fold(f64::NEG_INFINITY, f64::max);
            if best < 0.0 {
                bad += 1;
            } else {
                worst = worst.min(best);
            }
        });
        (count, bad, worst)
    }

    #[test]
    fn equal_split() {
        let pt = SimplexPoint::new([0.125; 8], 0.01).unwrap();
        let h = subset_hit(&pt, &WindowConstants::default());
        assert!(h.hit);
        assert_eq!(mask_indices(h.witness.unwrap()), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn heavy_last_coordinate() {
        let lo = 1.0 / SIFT_RATIO;
        let mut t = [lo; 8];
        t[7] = 0.78;
        let rest = (1.0 - 0.78 - 7.0 * lo) / 7.0;
        assert!(rest < 0.0, "seven minimal coordinates already exceed 0.22");
        t[7] = 1.0 - 7.0 * lo;
        let pt = SimplexPoint::new(t, 0.01).unwrap();
        assert!(subset_hit(&pt, &WindowConstants::default()).hit);
    }

    #[test]
    fn complement_leaves_window() {
        let pt = SimplexPoint::new([0.125; 8], 0.0).unwrap();
        let w = WindowConstants::default();
        let m = subset_hit(&pt, &w).witness.unwrap();
        let c = 1.0 - pt.subset_sum(m);
        assert!(!w.contains(c));
        assert!((0.2162..=0.3605).contains(&c));
    }

    #[test]
    fn canonical_order_shape() {
        let o = canonical_subsets();
        assert_eq!(o.len(), 254);
        assert_eq!(o[0], 1);
        assert_eq!(o[8], 0b11);
        assert!(o.windows(2).all(|p| p[0].count_ones() <= p[1].count_ones()));
    }

    #[test]
    fn pruned_search_matches_naive() {
        let w = WindowConstants::default();
        let (count, bad, worst) = naive(1e-2, 0.01, &w);
        let r = exhaustive_certify(1e-2, 0.01, &w).unwrap();
        assert_eq!(r.points_checked, count);
        assert_eq!(r.counterexample_count, bad as u64);
        assert!((r.min_margin - worst).abs() < 1e-12);
        let tight = WindowConstants::new(0.70, 0.71).unwrap();
        for tight in [tight, WindowConstants::new(0.655, 0.70).unwrap()] {
            let (count, bad, worst) = naive(1e-2, 0.01, &tight);
            let r = exhaustive_certify(1e-2, 0.01, &tight).unwrap();
            assert_eq!(r.points_checked, count);
            assert_eq!(r.counterexample_count, bad as u64);
            assert!((r.min_margin - worst).abs() < 1e-12);
        }
    }

    #[test]
    fn shrunk_window_fails() {
        let w = WindowConstants::new(0.70, 0.71).unwrap();
        let r = exhaustive_certify(5e-3, 0.01, &w).unwrap();
        assert!(r.counterexample_count > 0);
        assert_eq!(r.counterexamples.len(), MAX_RECORDED.min(r.counterexample_count as usize));
        let eq = SimplexPoint::new([0.125; 8], 0.01).unwrap();
        assert!(!subset_hit(&eq, &w).hit);
        assert!(matches!(r.ensure_certified(), Err(Error::Certification(_))));
    }

    #[test]
    fn certified_and_stable_under_refinement() {
        let w = WindowConstants::default();
        let a = exhaustive_certify(1e-2, 0.01, &w).unwrap();
        let b = exhaustive_certify(5e-3, 0.01, &w).unwrap();
        a.ensure_certified().unwrap();
        b.ensure_certified().unwrap();
        assert!(b.points_checked >= 100_000);
        assert!(b.min_margin <= a.min_margin * 2.0 && a.min_margin <= b.min_margin * 2.0);
    }

    #[test]
    fn analytic_window() {
        let w = WindowConstants::default();
        let at = |g: f64, eta: f64| window_inside_analytic(&make_params(g, eta, 1e-9).unwrap(), &w).unwrap();
        let r0 = at(0.989, 0.0);
        assert!(r0.pass && r0.lower_slack < 1e-9 && r0.upper_slack < 1e-9);
        let r1 = at(0.999, 1e-6);
        assert!(r1.lower_slack > r0.lower_slack && r1.upper_slack > r0.upper_slack);
        // η > 0 pushes the top edge below β₀ exactly at γ = 0.989
        assert!(!at(0.989, 1e-6).pass);
        assert!(window_inside_analytic(&make_params(0.98, 1e-6, 1e-9).unwrap(), &w).is_err());
    }

    #[test]
    fn full_sum_corner() {
        // Σt = 1 forces every tᵢ ≤ 1 − 7/17.41 < β₀
        let r = exhaustive_certify(5e-3, 0.0, &WindowConstants::default()).unwrap();
        assert!(r.points_checked > 0);
        r.ensure_certified().unwrap();
    }

    #[test]
    fn slacks_monotone_and_continuous() {
        let w = WindowConstants::default();
        let rows: Vec<SlackReport> = (0..100)
            .map(|i| 0.989 + 0.01 * i as f64 / 99.0)
            .map(|g| window_inside_analytic(&make_params(g, 0.0, 1e-9).unwrap(), &w).unwrap())
            .collect();
        for p in rows.windows(2) {
            let dg = p[1].gamma - p[0].gamma;
            for (a, b, rate) in [
                (p[0].lower_slack, p[1].lower_slack, 5.0 - 4.0 * 140.0 / 270.0),
                (p[0].upper_slack, p[1].upper_slack, (1.0 + 140.0 / 270.0) / 4.0),
            ] {
                assert!(b > a);
                assert!(((b - a) / dg - rate).abs() < 1e-6);
            }
        }
    }

    proptest! {
        #[test]
        fn hit_invariant_under_equal_swaps(a in 0.06f64..0.125, b in 0.06f64..0.125) {
            let lo = a.min(b).max(1.0 / SIFT_RATIO);
            let mut t = [lo; 8];
            t[7] = 1.0 - 7.0 * lo;
            prop_assume!(t[7] >= t[6]);
            let pt = SimplexPoint::new(t, 0.01).unwrap();
            let w = WindowConstants::default();
            let h = subset_hit(&pt, &w);
            let mut q = t;
            q.swap(1, 4);
            prop_assert_eq!(subset_hit(&SimplexPoint { t: q }, &w), h);
        }
    }
}
