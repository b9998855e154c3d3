use serde::Serialize;

use super::{check_admissible, integral_1d, integral_7fold, Constraint, GammaParams, Integral7, Method};
use crate::error::{Error, Result};
use crate::SIFT_RATIO;

/// The final lower-bound bracket and its ingredients.
#[derive(Clone, Debug, Serialize)]
pub struct BracketReport {
    pub params: GammaParams,
    pub first_term: f64,
    pub i1: f64,
    pub i7: Integral7,
    /// `log(17.41ξ − 1)/ξ − λ·I₁ − (λγ/ξ)·I₇`.
    pub bracket: f64,
    /// `bracket / 17.41`, the normalization of the weighted-sum display.
    pub bracket_scaled: f64,
    pub constraints: Vec<Constraint>,
}

pub fn lower_bound_bracket(p: &GammaParams, method: Method) -> Result<BracketReport> {
    let report = check_admissible(p);
    if !report.all_pass() {
        let names: Vec<_> = report.failures().map(|c| c.name).collect();
        return Err(Error::Parameter(format!(
            "gamma={} is not admissible: {}",
            p.gamma,
            names.join(", ")
        )));
    }
    let first_term = (SIFT_RATIO * p.xi - 1.0).ln() / p.xi;
    let i1 = integral_1d(p)?;
    let i7 = integral_7fold(p, method)?;
    let bracket = first_term - p.lambda_w * i1 - p.lambda_w * p.gamma / p.xi * i7.value;
    Ok(BracketReport {
        params: *p,
        first_term,
        i1,
        i7,
        bracket,
        bracket_scaled: bracket / SIFT_RATIO,
        constraints: report.constraints,
    })
}
