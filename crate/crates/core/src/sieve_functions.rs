//! Linear-sieve functions `F` (upper) and `f` (lower).
//!
//! On the base windows both have closed forms: `F(s) = 2e^{C₀}/s` for
//! `s ≤ 3`, `f(s) = 0` for `s ≤ 2` and `f(s) = 2e^{C₀} log(s−1)/s` for
//! `2 ≤ s ≤ 4`. Beyond those, the table integrates
//!
//! ```text
//! (s F(s))' = f(s − 1),    (s f(s))' = F(s − 1)
//! ```
//!
//! by the trapezoid rule on a uniform grid. Closed forms always win where
//! they apply.

use std::sync::OnceLock;

use crate::error::{domain, Result};
use crate::EULER_GAMMA;

pub fn two_e_gamma() -> f64 {
    2.0 * EULER_GAMMA.exp()
}

#[derive(Clone, Debug)]
pub struct SieveFunctionTable {
    step: f64,
    s_max: f64,
    shift: usize,
    upper: Vec<f64>,
    lower: Vec<f64>,
}

impl SieveFunctionTable {
    /// `step` must divide 1 (so `s − 1` lands on the grid).
    pub fn new(step: f64, s_max: f64) -> Result<Self> {
        if !(step > 0.0 && step <= 0.01) {
            return Err(domain(format!("grid step {step} must lie in (0, 0.01]")));
        }
        let shift = (1.0 / step).round() as usize;
        if ((shift as f64) * step - 1.0).abs() > 1e-12 {
            return Err(domain(format!("grid step {step} does not divide 1")));
        }
        if !(s_max > 4.0) {
            return Err(domain(format!("s_max {s_max} must exceed 4")));
        }
        let n = (s_max / step).round() as usize;
        let c = two_e_gamma();
        let mut upper = vec![f64::NAN; n + 1];
        let mut lower = vec![f64::NAN; n + 1];
        for k in 1..=n {
            let s = k as f64 * step;
            let sp = (k - 1) as f64 * step;
            upper[k] = if k <= 3 * shift {
                c / s
            } else {
                (sp * upper[k - 1] + 0.5 * step * (lower[k - 1 - shift] + lower[k - shift])) / s
            };
            lower[k] = if k <= 2 * shift {
                0.0
            } else if k <= 4 * shift {
                c * (s - 1.0).ln() / s
            } else {
                (sp * lower[k - 1] + 0.5 * step * (upper[k - 1 - shift] + upper[k - shift])) / s
            };
        }
        Ok(SieveFunctionTable { step, s_max, shift, upper, lower })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    fn check(&self, s: f64) -> Result<()> {
        if !(s > 0.0 && s <= self.s_max) {
            return Err(domain(format!("s={s} outside (0, {}]", self.s_max)));
        }
        Ok(())
    }

    fn grid_floor(&self, s: f64) -> usize {
        let mut k = (s / self.step).floor() as usize;
        while k as f64 * self.step > s {
            k -= 1;
        }
        k.min(self.upper.len() - 1)
    }

    /// Upper sieve function `F(s)`.
    pub fn upper(&self, s: f64) -> Result<f64> {
        self.check(s)?;
        if s <= 3.0 {
            return Ok(two_e_gamma() / s);
        }
        let k = self.grid_floor(s);
        let sk = k as f64 * self.step;
        let g0 = self.lower[k - self.shift];
        let g1 = self.lower(s - 1.0)?;
        Ok((sk * self.upper[k] + 0.5 * (s - sk) * (g0 + g1)) / s)
    }

    /// Lower sieve function `f(s)`.
    pub fn lower(&self, s: f64) -> Result<f64> {
        self.check(s)?;
        if s <= 2.0 {
            return Ok(0.0);
        }
        if s <= 4.0 {
            return Ok(two_e_gamma() * (s - 1.0).ln() / s);
        }
        let k = self.grid_floor(s);
        let sk = k as f64 * self.step;
        let g0 = self.upper[k - self.shift];
        let g1 = self.upper(s - 1.0)?;
        Ok((sk * self.lower[k] + 0.5 * (s - sk) * (g0 + g1)) / s)
    }

    /// Central-difference residuals of both delay equations at `s`.
    pub fn dde_residual(&self, s: f64, h: f64) -> Result<(f64, f64)> {
        if !(h > 0.0 && h <= 1e-3) {
            return Err(domain(format!("difference step {h} outside (0, 1e-3]")));
        }
        if !(s >= 2.0 + h && s <= self.s_max - h) {
            return Err(domain(format!(
                "s={s} needs 2+h ≤ s ≤ {} − h for the stencil",
                self.s_max
            )));
        }
        let (a, b) = (s - h, s + h);
        let d_upper = (b * self.upper(b)? - a * self.upper(a)?) / (2.0 * h);
        let d_lower = (b * self.lower(b)? - a * self.lower(a)?) / (2.0 * h);
        Ok((
            (d_upper - self.lower(s - 1.0)?).abs(),
            (d_lower - self.upper(s - 1.0)?).abs(),
        ))
    }

    /// Grid points with their tabulated values, for export.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (1..self.upper.len()).map(|k| (k as f64 * self.step, self.upper[k], self.lower[k]))
    }
}

/// Shared table with step `1e-4` on `(0, 6]`.
pub fn default_table() -> &'static SieveFunctionTable {
    static T: OnceLock<SieveFunctionTable> = OnceLock::new();
    T.get_or_init(|| SieveFunctionTable::new(1e-4, 6.0).expect("default grid is valid"))
}

#[allow(non_snake_case)]
pub fn eval_F(s: f64) -> Result<f64> {
    default_table().upper(s)
}

pub fn eval_f(s: f64) -> Result<f64> {
    default_table().lower(s)
}

pub fn dde_residual(s: f64, h: f64) -> Result<(f64, f64)> {
    default_table().dde_residual(s, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use proptest::prelude::*;

    #[test]
    fn base_values() {
        let t = default_table();
        assert!((t.upper(2.0).unwrap() - EULER_GAMMA.exp()).abs() < 1e-12);
        assert!((t.upper(2.5).unwrap() - 1.424_857_934_392_158_4).abs() < 1e-12);
        assert_eq!(t.lower(2.0).unwrap(), 0.0);
        assert!((t.lower(3.0).unwrap() - 0.823_030_216_601_993_4).abs() < 1e-12);
        assert!((t.lower(2.5).unwrap() - 0.577_730_176_407_092_3).abs() < 1e-12);
        assert!((t.lower(2.544_439_259_259_259).unwrap() - 0.608_513_288_036_273_6).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let t = default_table();
        assert!(t.upper(0.0).is_err());
        assert!(t.lower(6.01).is_err());
        assert!(t.dde_residual(2.0, 1e-4).is_err());
        assert!(t.dde_residual(3.0, 1e-2).is_err());
    }

    #[test]
    fn residual_spots() {
        for s in [2.0 + 1e-4, 2.5, 3.5, 4.5, 5.5] {
            let (a, b) = dde_residual(s, 1e-4).unwrap();
            assert!(a < 1e-6 && b < 1e-6, "s={s}: {a:e} {b:e}");
        }
    }

    #[test]
    fn extension_against_adaptive_quadrature() {
        // sF(s) = 3F(3) + ∫_3^s f(t−1) dt with f from its closed form on [2, 4]
        let c = two_e_gamma();
        for s in [3.3, 4.0, 4.77, 5.0] {
            let (i, _) = integrate(|t| eval_f(t - 1.0).unwrap(), 3.0, s, 1e-13).unwrap();
            let oracle = (c + i) / s;
            assert!((eval_F(s).unwrap() - oracle).abs() < 1e-8, "s={s}");
        }
        // sf(s) = 4f(4) + ∫_4^s F(t−1) dt, with F(t−1) itself from the nested integral
        let big_f = |r: f64| {
            if r <= 3.0 {
                c / r
            } else {
                let (i, _) = integrate(|t| c * (t - 2.0).ln() / (t - 1.0), 3.0, r, 1e-14).unwrap();
                (c + i) / r
            }
        };
        let four_f4 = c * 3f64.ln();
        for s in [4.2, 4.9, 5.6] {
            let (i, _) = integrate(|t| big_f(t - 1.0), 4.0, s, 1e-12).unwrap();
            let oracle = (four_f4 + i) / s;
            assert!((eval_f(s).unwrap() - oracle).abs() < 1e-8, "s={s}");
        }
    }

    #[test]
    fn grid_invariants() {
        let t = default_table();
        let rows: Vec<_> = t.rows().collect();
        let mut prev: Option<(f64, f64, f64)> = None;
        for &(s, up, lo) in &rows {
            assert!(lo >= 0.0 && lo < up, "s={s}");
            if s <= 2.0 {
                assert_eq!(lo, 0.0);
            }
            if s > 2.0 + 1e-9 {
                assert!(lo > 0.0);
            }
            if let Some((ps, pu, pl)) = prev {
                assert!(s * up >= ps * pu - 1e-12);
                assert!(s * lo >= ps * pl - 1e-12);
                if s >= 2.0 {
                    assert!(up <= pu + 1e-15);
                    assert!(lo >= pl - 1e-15);
                }
            }
            prev = Some((s, up, lo));
        }
    }

    proptest! {
        #[test]
        fn residual_small_on_base_window(s in 2.05f64..3.95) {
            let (a, b) = dde_residual(s, 1e-4).unwrap();
            prop_assert!(a < 1e-5 && b < 1e-5);
        }
    }
}
