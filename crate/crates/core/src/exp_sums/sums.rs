use num_complex::Complex64;
use serde::Serialize;

use super::ExponentPair;
use crate::error::{domain, Error, Result};

/// `e(x) = exp(2πix)`, reduced mod 1 first.
pub fn e(x: f64) -> Complex64 {
    let r = x - x.floor();
    Complex64::from_polar(1.0, std::f64::consts::TAU * r)
}

/// Pairwise sum, so rounding grows like `log n`.
pub fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 32 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialSum {
    pub a: u64,
    pub b: u64,
    pub amp: f64,
    pub expnt: f64,
    pub re: f64,
    pub im: f64,
    /// `|amp · expnt| / a`, the size of `|f'|` on the range.
    pub lambda1: f64,
}

impl MonomialSum {
    pub fn sum(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.sum().norm()
    }

    /// `λ₁^κ a^ℓ + λ₁^{−1}` for the given pair.
    pub fn bound(&self, pair: &ExponentPair) -> f64 {
        let (k, l) = pair.to_f64();
        self.lambda1.powf(k) * (self.a as f64).powf(l) + 1.0 / self.lambda1
    }
}

/// `Σ_{a<n≤b} e(amp · (n/a)^expnt)` by direct summation.
pub fn monomial_exp_sum(a: u64, b: u64, amp: f64, expnt: f64) -> Result<MonomialSum> {
    if a < 1 || b <= a {
        return Err(domain(format!("need 1 ≤ a < b, got a={a} b={b}")));
    }
    if b > 2 * a {
        return Err(domain(format!("need b ≤ 2a, got a={a} b={b}")));
    }
    if 2 * a > 10_000_000 {
        return Err(Error::Resource { what: format!("summation range 2a={}", 2 * a), limit: 10_000_000 });
    }
    let af = a as f64;
    let terms: Vec<Complex64> = (a + 1..=b).map(|n| e(amp * (n as f64 / af).powf(expnt))).collect();
    let s = pairwise_sum(&terms);
    Ok(MonomialSum { a, b, amp, expnt, re: s.re, im: s.im, lambda1: (amp * expnt).abs() / af })
}

/// Sawtooth `ψ(t) = t − ⌊t⌋ − 1/2`.
pub fn psi(t: f64) -> f64 {
    t - t.floor() - 0.5
}

/// Distance to the nearest integer.
pub fn dist_to_int(t: f64) -> f64 {
    let r = t - t.floor();
    r.min(1.0 - r)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiCheck {
    pub h: u64,
    pub max_ratio: f64,
    pub worst_t: f64,
    pub checked: usize,
    /// Integer samples, where `‖t‖ = 0` and the ratio is undefined.
    pub skipped: usize,
}

/// `|ψ(t) + Σ_{0<|h|≤H} e(th)/(2πih)|` for one `t`; the two-sided sum is
/// `Σ_{h=1}^{H} sin(2πht)/(πh)`.
pub fn psi_truncation_error(t: f64, h: u64) -> f64 {
    let r = t - t.floor();
    let mut s = 0.0;
    for k in 1..=h {
        let x = (k as f64 * r).fract();
        s += (std::f64::consts::TAU * x).sin() / (std::f64::consts::PI * k as f64);
    }
    (psi(t) + s).abs()
}

/// Maximum over samples of the truncation error divided by
/// `min(1, 1/(H‖t‖))`.
pub fn psi_truncation_check(samples: &[f64], h: u64) -> Result<PsiCheck> {
    if h < 2 {
        return Err(domain(format!("truncation length H={h} must be at least 2")));
    }
    let mut out = PsiCheck { h, max_ratio: 0.0, worst_t: f64::NAN, checked: 0, skipped: 0 };
    for &t in samples {
        let d = dist_to_int(t);
        if d == 0.0 {
            out.skipped += 1;
            continue;
        }
        let ratio = psi_truncation_error(t, h) / (1.0f64).min(1.0 / (h as f64 * d));
        out.checked += 1;
        if ratio > out.max_ratio {
            out.max_ratio = ratio;
            out.worst_t = t;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_sums::{uniform_samples, ExponentPair};
    use rug::Rational;

    #[test]
    fn zero_phase() {
        let s = monomial_exp_sum(1000, 1700, 0.0, 1.3).unwrap();
        assert_eq!(s.re, 700.0);
        assert_eq!(s.im, 0.0);
    }

    #[test]
    fn conjugation_and_triangle() {
        let p = monomial_exp_sum(1000, 2000, 300.0, 1.0 / 0.99).unwrap();
        let m = monomial_exp_sum(1000, 2000, -300.0, 1.0 / 0.99).unwrap();
        assert!((p.sum() - m.sum().conj()).norm() < 1e-9);
        assert!(p.abs() <= 1000.0);
        let half = ExponentPair::new(Rational::from((1, 2)), Rational::from((1, 2)));
        assert!(p.bound(&half) > 0.0);
    }

    #[test]
    fn range_errors() {
        assert!(monomial_exp_sum(10, 30, 1.0, 1.5).is_err());
        assert!(matches!(
            monomial_exp_sum(6_000_000, 7_000_000, 1.0, 1.5),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(0.25), -0.25);
        assert_eq!(psi(-0.25), 0.25);
        assert!(psi_truncation_error(0.5, 17) < 1e-12);
        let c = psi_truncation_check(&[0.5, 2.0, 0.1], 10).unwrap();
        assert_eq!(c.skipped, 1);
        assert_eq!(c.checked, 2);
        assert!(c.max_ratio.is_finite());
    }

    #[test]
    fn psi_ratio_regression_guard() {
        let t = uniform_samples(10_000, 0x5EED);
        let mut prev = None;
        for h in [8u64, 16, 32, 64, 128, 256] {
            let r = psi_truncation_check(&t, h).unwrap().max_ratio;
            if let Some(p) = prev {
                assert!(r <= p * 1.5, "H={h}: {r} vs {p}");
            }
            prev = Some(r);
        }
    }
}
