use serde::Serialize;

use super::GammaParams;
use crate::SIFT_RATIO;

/// One named inequality with signed slack; positive slack means satisfied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constraint {
    pub name: &'static str,
    pub anchor: &'static str,
    pub slack: f64,
    pub strict: bool,
    pub pass: bool,
}

impl Constraint {
    fn new(name: &'static str, anchor: &'static str, slack: f64, strict: bool) -> Self {
        let pass = if strict { slack > 0.0 } else { slack >= 0.0 };
        Constraint { name, anchor, slack, strict, pass }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub gamma: f64,
    pub eta: f64,
    pub constraints: Vec<Constraint>,
}

impl ConstraintReport {
    pub fn all_pass(&self) -> bool {
        self.constraints.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.name == name)
    }
}

/// Exponent ranges `M ≤ X^𝔞` (Type I) and `X^𝔟 ≤ M ≤ X^𝔠` (Type II).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BalogFriedlanderWindow {
    pub a_frak: f64,
    pub b_frak: f64,
    pub c_frak: f64,
}

impl BalogFriedlanderWindow {
    pub fn of(p: &GammaParams) -> Self {
        let (g, x, e) = (p.gamma, p.xi, p.eta);
        BalogFriedlanderWindow {
            a_frak: 2.0 - (3.0 * x + 1.0) / g - e,
            b_frak: (11.0 + 60.0 * x - 11.0 * g) / (14.0 * g) + e,
            c_frak: (11.0 + 60.0 * x + 30.0 * g) / (55.0 * g) - e,
        }
    }

    /// `𝔠/2 − (1 − 𝔞)`; vanishes identically at `η = 0` under the `ξ(γ)` formula.
    pub fn half_c_slack(&self) -> f64 {
        self.c_frak / 2.0 - (1.0 - self.a_frak)
    }
}

pub fn check_admissible(p: &GammaParams) -> ConstraintReport {
    let (g, x, e) = (p.gamma, p.xi, p.eta);
    let w = BalogFriedlanderWindow::of(p);
    let s = SIFT_RATIO * x;
    let c = vec![
        Constraint::new("xi > 0", "level-def", x, true),
        Constraint::new("xi <= gamma(1-eta)/2", "Type-II-es", g * (1.0 - e) / 2.0 - x, false),
        Constraint::new("gamma > 1/2 + 3xi/2", "suffi-condi-1", g - 0.5 - 1.5 * x, true),
        Constraint::new("gamma > 1/2 + xi", "suffi-condi-2", g - 0.5 - x, true),
        Constraint::new("gamma > 2xi", "suffi-condi-2", g - 2.0 * x, true),
        Constraint::new(
            "gamma > 11/25 + 12xi/5 + eta",
            "Type-II-condi",
            g - 11.0 / 25.0 - 2.4 * x - e,
            true,
        ),
        Constraint::new("gamma > (5xi+6)/7", "S_0-upp-condition", g - (5.0 * x + 6.0) / 7.0, true),
        Constraint::new("gamma > 225/238", "S_0-upp-condition", g - 225.0 / 238.0, true),
        Constraint::new("17.41xi > 2", "f-closed-form", s - 2.0, true),
        Constraint::new("17.41xi < 4", "f-closed-form", 4.0 - s, true),
        Constraint::new("0 < a", "exponen-fenjie", w.a_frak, true),
        Constraint::new("a < 1", "exponen-fenjie", 1.0 - w.a_frak, true),
        Constraint::new("0 < b", "exponen-fenjie", w.b_frak, true),
        Constraint::new("b < c", "exponen-fenjie", w.c_frak - w.b_frak, true),
        Constraint::new("c < 1", "exponen-fenjie", 1.0 - w.c_frak, true),
        Constraint::new("b < 2/3", "exponen-fenjie", 2.0 / 3.0 - w.b_frak, true),
        Constraint::new(
            "1-c < c-b",
            "exponen-fenjie",
            (w.c_frak - w.b_frak) - (1.0 - w.c_frak),
            true,
        ),
        Constraint::new("1-a < c/2", "exponen-fenjie", w.half_c_slack(), true),
        Constraint::new("u < 9 - epsilon", "lambda-def", 9.0 - p.epsilon - p.u, true),
    ];
    ConstraintReport { gamma: g, eta: e, constraints: c }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{make_params, GammaParams};
    use proptest::prelude::*;

    #[test]
    fn passes_at_0989_and_0999() {
        for g in [0.989, 0.999] {
            let r = check_admissible(&make_params(g, 1e-6, 1e-9).unwrap());
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn fails_threshold_at_094() {
        let r = check_admissible(&make_params(0.94, 1e-6, 1e-9).unwrap());
        let names: Vec<_> = r.failures().map(|c| c.name).collect();
        assert!(names.contains(&"gamma > 225/238"));
        assert!(names.contains(&"gamma > (5xi+6)/7"));
    }

    #[test]
    fn half_c_degenerates_at_eta_zero() {
        // both sides reduce to (150γ − 27)/(270γ)
        for k in 0..50 {
            let g = 0.93 + 0.0014 * k as f64;
            let w = BalogFriedlanderWindow::of(&make_params(g, 0.0, 0.0).unwrap());
            let rhs = (150.0 * g - 27.0) / (270.0 * g);
            assert!((1.0 - w.a_frak - rhs).abs() < 1e-13);
            assert!((w.c_frak / 2.0 - rhs).abs() < 1e-13);
            assert!(w.half_c_slack().abs() < 1e-12);
        }
    }

    #[test]
    fn half_c_slack_linear_in_eta() {
        // slack = η(27/(11γ) − 3/2)
        for g in [0.9891, 0.995, 0.9999] {
            let eta = 1e-6;
            let w = BalogFriedlanderWindow::of(&make_params(g, eta, 1e-9).unwrap());
            let expect = eta * (27.0 / (11.0 * g) - 1.5);
            assert!((w.half_c_slack() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn type_ii_condition_from_explicit_xi() {
        // with the formula ξ the condition always holds; probe it with a chosen ξ
        let g = 0.95;
        let eta = 1e-6;
        let xi = (g - 11.0 / 25.0 - eta) * 5.0 / 12.0;
        let p = GammaParams::from_parts(g, eta, 1e-9, xi + 1e-9).unwrap();
        let c = check_admissible(&p);
        assert!(!c.get("gamma > 11/25 + 12xi/5 + eta").unwrap().pass);
    }

    proptest! {
        #[test]
        fn slacks_monotone_in_gamma(g in 0.9891f64..0.9998, dg in 1e-5f64..1e-4) {
            let a = check_admissible(&make_params(g, 1e-6, 1e-9).unwrap());
            let b = check_admissible(&make_params(g + dg, 1e-6, 1e-9).unwrap());
            prop_assert!(a.all_pass() && b.all_pass());
            for name in ["gamma > 225/238", "gamma > (5xi+6)/7", "17.41xi > 2"] {
                prop_assert!(b.get(name).unwrap().slack > a.get(name).unwrap().slack);
            }
        }
    }
}
