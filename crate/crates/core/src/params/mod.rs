//! The parameter bundle `(γ, η, ε, ξ, u, λ)` and everything evaluated from it:
//! admissibility inequalities, exponent budgets, the two integrals of the
//! weighted sieve, and the final lower-bound bracket.

mod bracket;
mod budget;
mod constraints;
mod integrals;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::SIFT_RATIO;

pub use bracket::{lower_bound_bracket, BracketReport};
pub use budget::{
    exponent_budget_s0, exponent_budget_type_i, exponent_budget_type_ii, BudgetReport, BudgetTerm,
    EndpointValue,
};
pub use constraints::{check_admissible, BalogFriedlanderWindow, Constraint, ConstraintReport};
pub use integrals::{
    integral_1d, integral_1d_closed, integral_1d_quadrature, integral_7fold, integral_7fold_on,
    Integral7, Method, MC_SEED,
};

pub const DEFAULT_ETA: f64 = 1e-6;
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Lower end of the admissible `γ` range, `99/140`.
pub const GAMMA_MIN: f64 = 99.0 / 140.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaParams {
    pub gamma: f64,
    pub eta: f64,
    pub epsilon: f64,
    pub xi: f64,
    pub u: f64,
    pub lambda_w: f64,
    pub z_exp: f64,
}

/// Level of distribution `ξ(γ) = (140γ − 99)/270 − η`.
pub fn xi_of_gamma(gamma: f64, eta: f64) -> f64 {
    (140.0 * gamma - 99.0) / 270.0 - eta
}

/// Build the bundle with `ξ` from the level-of-distribution formula.
///
/// `η = 0` is accepted as the limiting case; the strict inequalities that
/// need `η > 0` then show up as zero slack in [`check_admissible`].
pub fn make_params(gamma: f64, eta: f64, epsilon: f64) -> Result<GammaParams> {
    if !(gamma > GAMMA_MIN && gamma < 1.0) {
        return Err(Error::Parameter(format!("gamma={gamma} outside (99/140, 1)")));
    }
    GammaParams::from_parts(gamma, eta, epsilon, xi_of_gamma(gamma, eta))
}

impl GammaParams {
    /// Build the bundle around an arbitrary `ξ`, for probing constraints away
    /// from the formula.
    pub fn from_parts(gamma: f64, eta: f64, epsilon: f64, xi: f64) -> Result<GammaParams> {
        if !(gamma > 0.5 && gamma < 1.0) {
            return Err(Error::Parameter(format!("gamma={gamma} outside (1/2, 1)")));
        }
        for (name, v) in [("eta", eta), ("epsilon", epsilon)] {
            if !(0.0..=1e-3).contains(&v) {
                return Err(Error::Parameter(format!("{name}={v} outside [0, 1e-3]")));
            }
        }
        if !(xi > 0.0) {
            return Err(Error::Parameter(format!("xi={xi} must be positive")));
        }
        let u = 1.0 / xi + epsilon;
        let denom = 9.0 - u - epsilon;
        if !(denom > 0.0) {
            return Err(Error::Parameter(format!(
                "weight denominator nonpositive: 9 − u − ε = {denom}"
            )));
        }
        Ok(GammaParams {
            gamma,
            eta,
            epsilon,
            xi,
            u,
            lambda_w: 1.0 / denom,
            z_exp: 1.0 / SIFT_RATIO,
        })
    }

    /// `uξ − 1`, which is exactly `εξ`; forming it from `u` would cancel.
    pub fn u_xi_minus_one(&self) -> f64 {
        self.epsilon * self.xi
    }

    /// Argument `17.41ξ` of the lower sieve function.
    pub fn sieve_s(&self) -> f64 {
        SIFT_RATIO * self.xi
    }
}
