use serde::Serialize;

use super::{BalogFriedlanderWindow, GammaParams};

/// An exponent of `X` affine in `μ = log_X M`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetTerm {
    pub label: String,
    pub c0: f64,
    pub c_mu: f64,
}

impl BudgetTerm {
    fn new(label: &str, c0: f64, c_mu: f64) -> Self {
        BudgetTerm { label: label.to_string(), c0, c_mu }
    }

    pub fn value(&self, mu: f64) -> f64 {
        self.c0 + self.c_mu * mu
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndpointValue {
    pub label: String,
    pub mu: f64,
    pub value: f64,
    pub slack: f64,
}

/// Side conditions such as `T > 1`, reported as a signed exponent margin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Feasibility {
    pub name: String,
    pub value: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetReport {
    pub name: &'static str,
    pub anchor: &'static str,
    pub bound: f64,
    pub mu_lo: f64,
    pub mu_hi: f64,
    pub terms: Vec<BudgetTerm>,
    pub endpoints: Vec<EndpointValue>,
    /// `bound − max endpoint value`.
    pub delta: f64,
    pub feasibility: Vec<Feasibility>,
    pub pass: bool,
}

impl BudgetReport {
    fn build(
        name: &'static str,
        anchor: &'static str,
        bound: f64,
        terms: Vec<BudgetTerm>,
        (mu_lo, mu_hi): (f64, f64),
        feasibility: Vec<Feasibility>,
    ) -> Self {
        let mut endpoints = Vec::new();
        for t in &terms {
            for mu in [mu_lo, mu_hi] {
                let value = t.value(mu);
                endpoints.push(EndpointValue {
                    label: t.label.clone(),
                    mu,
                    value,
                    slack: bound - value,
                });
            }
        }
        let delta = endpoints.iter().map(|e| e.slack).fold(f64::INFINITY, f64::min);
        let pass = delta > 0.0 && feasibility.iter().all(|f| f.pass);
        BudgetReport { name, anchor, bound, mu_lo, mu_hi, terms, endpoints, delta, feasibility, pass }
    }

    /// Re-evaluate the same terms over another `μ` interval; side conditions
    /// are dropped since they belong to the original window.
    pub fn report_on(&self, mu_lo: f64, mu_hi: f64) -> BudgetReport {
        Self::build(self.name, self.anchor, self.bound, self.terms.clone(), (mu_lo, mu_hi), vec![])
    }

    /// The endpoint with the smallest slack.
    pub fn worst(&self) -> &EndpointValue {
        self.endpoints
            .iter()
            .min_by(|a, b| a.slack.total_cmp(&b.slack))
            .expect("every budget has terms")
    }

    pub fn max_on_interval(&self, mu: f64) -> f64 {
        self.terms.iter().map(|t| t.value(mu)).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn feas(name: &str, value: f64) -> Feasibility {
    Feasibility { name: name.to_string(), value, pass: value > 0.0 }
}

/// Squared Type II bound after choosing `T`, with `J`, `D` at `X^{ξ/γ}`
/// (their `X^η` excess folded into the common `X^η` factor), over
/// `μ ∈ [𝔟, 𝔠]`. The middle term appears twice: the third and second terms
/// of the pre-substitution bound coincide once `J`, `D` are fixed.
pub fn exponent_budget_type_ii(p: &GammaParams) -> BudgetReport {
    let (g, x) = (p.gamma, p.xi);
    let w = BalogFriedlanderWindow::of(p);
    let mid = (71.0 * g + 60.0 * x + 11.0) / (41.0 * g);
    let terms = vec![
        BudgetTerm::new("M^-55/41 X^(112g+142xi-30)/(41g)", (112.0 * g + 142.0 * x - 30.0) / (41.0 * g), -55.0 / 41.0),
        BudgetTerm::new("M^-14/41 X^(71g+60xi+11)/(41g) [J D^19/41]", mid, -14.0 / 41.0),
        BudgetTerm::new("M^-14/41 X^(71g+60xi+11)/(41g) [J^71/30 D^-1111/1230]", mid, -14.0 / 41.0),
        BudgetTerm::new("M^-28/41 X^(60g+38xi+22)/(41g)", (60.0 * g + 38.0 * x + 22.0) / (41.0 * g), -28.0 / 41.0),
    ];
    let t_exp = |mu: f64| (30.0 * g + 11.0) / (41.0 * g) - 55.0 * mu / 41.0 + 60.0 * x / (41.0 * g);
    let f = vec![
        feas("window b < c", w.c_frak - w.b_frak),
        feas("log_X T at mu = b", t_exp(w.b_frak)),
        feas("log_X T at mu = c", t_exp(w.c_frak)),
    ];
    BudgetReport::build("typeII", "Type-II-es", 2.0, terms, (w.b_frak, w.c_frak), f)
}

/// Single-term Type I bound `(3ξ+1)/(4γ) + 1/2 + μ/4 ≤ 1` for
/// `0 ≤ μ ≤ 𝔞`.
pub fn exponent_budget_type_i(p: &GammaParams) -> BudgetReport {
    let (g, x) = (p.gamma, p.xi);
    let w = BalogFriedlanderWindow::of(p);
    let terms = vec![BudgetTerm::new(
        "X^((3xi+1)/(4g)+1/2) M^1/4",
        (3.0 * x + 1.0) / (4.0 * g) + 0.5,
        0.25,
    )];
    let f = vec![
        feas("(1-xi)/g - (2-(3xi+1)/g)", (2.0 + 2.0 * x) / g - 2.0),
        feas("window 0 < a", w.a_frak),
    ];
    BudgetReport::build("typeI", "Type-I-es", 1.0, terms, (0.0, w.a_frak), f)
}

/// Squared bound on the `𝔖₀` sum with `J = X^{1−γ+ξ}`, `D = X^ξ` over the
/// window `[5 − 5γ + 4ξ + η, (γ + ξ + 2)/4 − η]`.
pub fn exponent_budget_s0(p: &GammaParams) -> BudgetReport {
    let (g, x, e) = (p.gamma, p.xi, p.eta);
    let lo = 5.0 - 5.0 * g + 4.0 * x + e;
    let hi = (g + x + 2.0) / 4.0 - e;
    let terms = vec![
        BudgetTerm::new("M^-4/3 X^(14-8g+10xi)/3", (14.0 - 8.0 * g + 10.0 * x) / 3.0, -4.0 / 3.0),
        BudgetTerm::new("M^-1/3 X^(11-5g+4xi)/3", (11.0 - 5.0 * g + 4.0 * x) / 3.0, -1.0 / 3.0),
        BudgetTerm::new("M^-2/3 X^(10-4g+2xi)/3", (10.0 - 4.0 * g + 2.0 * x) / 3.0, -2.0 / 3.0),
    ];
    let t_exp = |mu: f64| (g + 2.0) / 3.0 - 4.0 * mu / 3.0 + x / 3.0;
    let f = vec![
        feas("window nonempty", hi - lo),
        feas("gamma - (5xi+6)/7", g - (5.0 * x + 6.0) / 7.0),
        feas("log_X T at window bottom", t_exp(lo)),
        feas("log_X T at window top", t_exp(hi)),
    ];
    BudgetReport::build("S0", "S_0-upper-2", 2.0, terms, (lo, hi), f)
}
