use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::GammaParams;
use crate::error::{domain, Error, Result};
use crate::quadrature::{gauss_legendre, integrate};
use crate::SIFT_RATIO;

pub const MC_SEED: u64 = 0x5EED;

/// Closed form of `∫_u^{17.41} (t−u)/(t(ξt−1)) dt`, given `uξ − 1` separately
/// so the caller can supply it without cancellation.
pub fn integral_1d_closed(u: f64, xi: f64, u_xi_minus_one: f64) -> f64 {
    if u == SIFT_RATIO {
        return 0.0;
    }
    u * (SIFT_RATIO / u).ln() - (u_xi_minus_one / xi) * ((SIFT_RATIO * xi - 1.0) / u_xi_minus_one).ln()
}

/// Adaptive quadrature of the same integral. The integrand rises from 0 to
/// about `1/(uξ)` over a layer of width `(uξ − 1)/ξ` above `u`, so the range
/// is cut geometrically away from `u` first.
pub fn integral_1d_quadrature(u: f64, xi: f64, u_xi_minus_one: f64) -> Result<f64> {
    let g = |t: f64| {
        let d = t - u;
        d / (t * (u_xi_minus_one + xi * d))
    };
    let layer = (u_xi_minus_one / xi).max(1e-300);
    let mut cuts = vec![u];
    let mut w = layer;
    while u + w < SIFT_RATIO && w < 1.0 {
        cuts.push(u + w);
        w *= 10.0;
    }
    cuts.push(SIFT_RATIO);
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        total += integrate(g, pair[0], pair[1], 1e-14)?.0;
    }
    Ok(total)
}

/// `∫_u^{17.41} (t−u)/(t(ξt−1)) dt` by both routes, which must agree to 1e-10.
pub fn integral_1d(p: &GammaParams) -> Result<f64> {
    let uxm1 = p.u_xi_minus_one();
    if !(uxm1 > 0.0) {
        return Err(domain("uξ ≤ 1: the integrand has a pole inside the range"));
    }
    if p.u > SIFT_RATIO {
        return Err(domain(format!("u={} exceeds 17.41", p.u)));
    }
    let closed = integral_1d_closed(p.u, p.xi, uxm1);
    let quad = integral_1d_quadrature(p.u, p.xi, uxm1)?;
    if (closed - quad).abs() > 1e-10 {
        return Err(Error::Numeric(format!(
            "1-D integral routes disagree: closed {closed} vs quadrature {quad}"
        )));
    }
    Ok(closed)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Method {
    TensorGauss,
    MonteCarlo { samples: u64, seed: u64 },
}

impl Method {
    pub fn monte_carlo(samples: u64) -> Self {
        Method::MonteCarlo { samples, seed: MC_SEED }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Integral7 {
    pub value: f64,
    /// Node-doubling change for the tensor rule, standard error for Monte Carlo.
    pub error: f64,
    pub method: Method,
    /// Final per-level node count (tensor rule only).
    pub nodes: usize,
}

/// The seven-fold integral over the ordered simplex region. It does not
/// depend on `γ`; the parameter is accepted for interface symmetry.
pub fn integral_7fold(_p: &GammaParams, method: Method) -> Result<Integral7> {
    integral_7fold_on(1.0 / SIFT_RATIO, 0.125, method)
}

/// Same integral with the outer `t₁` range replaced by `[a, b]`.
pub fn integral_7fold_on(a: f64, b: f64, method: Method) -> Result<Integral7> {
    if !(a > 0.0 && a <= b && b <= 0.125) {
        return Err(domain(format!("outer range [{a}, {b}] must sit inside (0, 1/8]")));
    }
    match method {
        Method::TensorGauss => tensor(a, b),
        Method::MonteCarlo { samples, seed } => monte_carlo(a, b, samples, seed),
    }
}

/// Innermost `t₇` integral in closed form: with `c = 1 − Σ₁⁶ tⱼ`,
/// `∫_{t₆}^{c/2} dt/(t(c−t)) = log((c − t₆)/t₆)/c`.
fn inner(t6: f64, c: f64) -> f64 {
    ((c - t6) / t6).ln() / c
}

fn nested(k: usize, lo: f64, hi: f64, prefix: f64, x: &[f64], w: &[f64]) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let (mid, half) = (0.5 * (hi + lo), 0.5 * (hi - lo));
    let mut s = 0.0;
    for (xi, wi) in x.iter().zip(w) {
        let t = mid + half * xi;
        let sum = prefix + t;
        let rest = if k == 6 {
            inner(t, 1.0 - sum)
        } else {
            nested(k + 1, t, (1.0 - sum) / (8 - k) as f64, sum, x, w)
        };
        s += wi * rest / t;
    }
    s * half
}

fn tensor_at(a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    if b <= a {
        return 0.0;
    }
    let (mid, half) = (0.5 * (b + a), 0.5 * (b - a));
    let parts: Vec<f64> = x
        .par_iter()
        .zip(w.par_iter())
        .map(|(xi, wi)| {
            let t = mid + half * xi;
            wi * nested(2, t, (1.0 - t) / 7.0, t, &x, &w) / t
        })
        .collect();
    parts.iter().sum::<f64>() * half
}

fn tensor(a: f64, b: f64) -> Result<Integral7> {
    let mut n = 8;
    let mut prev = tensor_at(a, b, n);
    let mut delta = f64::INFINITY;
    while n < 32 {
        n *= 2;
        let v = tensor_at(a, b, n);
        delta = (v - prev).abs();
        prev = v;
        if delta < 1e-7 {
            break;
        }
    }
    if delta > 1e-6 {
        return Err(Error::Numeric(format!(
            "seven-fold tensor rule did not settle: change {delta:e} at {n} nodes"
        )));
    }
    Ok(Integral7 { value: prev, error: delta, method: Method::TensorGauss, nodes: n })
}

const MC_CHUNK: u64 = 1 << 16;

fn mc_chunk(a: f64, b: f64, seed: u64, chunk: u64, count: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..count {
        let mut lo = a;
        let mut hi = b;
        let mut sum = 0.0;
        let mut f = 1.0;
        for k in 1..=6 {
            let t = lo + (hi - lo) * rng.random::<f64>();
            f *= (hi - lo) / t;
            sum += t;
            lo = t;
            hi = (1.0 - sum) / (8 - k) as f64;
        }
        f *= inner(lo, 1.0 - sum);
        s += f;
        s2 += f * f;
    }
    (s, s2)
}

fn monte_carlo(a: f64, b: f64, samples: u64, seed: u64) -> Result<Integral7> {
    if samples < 2 {
        return Err(domain("Monte Carlo needs at least two samples"));
    }
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| mc_chunk(a, b, seed, c, MC_CHUNK.min(samples - c * MC_CHUNK)))
        .collect();
    let (s, s2) = parts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = samples as f64;
    let mean = s / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(Integral7 {
        value: mean,
        error: (var / n).sqrt(),
        method: Method::MonteCarlo { samples, seed },
        nodes: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use proptest::prelude::*;

    #[test]
    fn closed_form_matches_mpmath_oracle() {
        let p = make_params(0.989, 1e-6, 1e-9).unwrap();
        assert!((integral_1d(&p).unwrap() - 6.390_158_558_901_061_6).abs() < 1e-10);
        let p = make_params(0.999, 1e-6, 1e-9).unwrap();
        assert!((integral_1d(&p).unwrap() - 6.401_591_460_200_576_8).abs() < 1e-10);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(integral_1d_closed(SIFT_RATIO, 0.2, 0.1), 0.0);
        let p = make_params(0.99, 1e-6, 0.0).unwrap();
        assert!(matches!(integral_1d(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn seven_fold_frozen() {
        // independent nested Gauss-Legendre run with 8 and 10 nodes per level
        let p = make_params(0.989, 1e-6, 1e-9).unwrap();
        let r = integral_7fold(&p, Method::TensorGauss).unwrap();
        assert!((r.value - 0.002_589_527_93).abs() < 1e-9, "{}", r.value);
        assert!(r.error < 1e-7);
        let q = integral_7fold(&make_params(0.995, 1e-6, 1e-9).unwrap(), Method::TensorGauss).unwrap();
        assert_eq!(r.value, q.value);
    }

    #[test]
    fn seven_fold_zero_measure() {
        let r = integral_7fold_on(0.125, 0.125, Method::TensorGauss).unwrap();
        assert_eq!(r.value, 0.0);
        let r = integral_7fold_on(0.125, 0.125, Method::monte_carlo(1000)).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn monte_carlo_agrees_and_is_reproducible() {
        let p = make_params(0.989, 1e-6, 1e-9).unwrap();
        let a = integral_7fold(&p, Method::monte_carlo(1_000_000)).unwrap();
        let b = integral_7fold(&p, Method::monte_carlo(1_000_000)).unwrap();
        assert_eq!(a, b);
        assert!((a.value - 0.002_589_527_93).abs() < 3.0 * a.error);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn routes_agree(g in 0.93f64..0.9999, eta in 0.0f64..1e-4, eps in 1e-10f64..1e-4) {
            let p = make_params(g, eta, eps).unwrap();
            let uxm1 = p.u_xi_minus_one();
            let c = integral_1d_closed(p.u, p.xi, uxm1);
            let q = integral_1d_quadrature(p.u, p.xi, uxm1).unwrap();
            prop_assert!((c - q).abs() <= 1e-10, "closed {} quad {}", c, q);
        }
    }
}
