use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::BOUND_EPS;
use super::sums::{e, pairwise_sum};
use crate::error::{domain, Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct TrilinearSum {
    pub h: u64,
    pub n: u64,
    pub m: u64,
    pub x: f64,
    pub s: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// `S = Σ_{h∼H} Σ_{n∼N} |Σ_{m∼M} e(X (m/M)^α (h/H)^β (n/N)^γ)|` and the bound
/// `(HNM)^{1+ε} ((X/(HNM²))^{1/4} + M^{−1/2} + X^{−1})`.
#[allow(clippy::too_many_arguments)]
pub fn trilinear_sum_check(
    h: u64,
    n: u64,
    m: u64,
    x: f64,
    alpha: f64,
    beta: f64,
    gamma_e: f64,
) -> Result<TrilinearSum> {
    for (name, v) in [("alpha", alpha), ("alpha - 1", alpha - 1.0), ("beta", beta), ("gamma", gamma_e)] {
        if v == 0.0 {
            return Err(domain(format!("degenerate exponents: factor {name} of α(α−1)βγ vanishes")));
        }
    }
    for (name, v) in [("H", h), ("N", n), ("M", m)] {
        if v < 2 {
            return Err(domain(format!("{name}={v} leaves an empty dyadic range")));
        }
        if v > 256 {
            return Err(Error::Resource { what: format!("trilinear range {name}={v}"), limit: 256 });
        }
    }
    let (hf, nf, mf) = (h as f64, n as f64, m as f64);
    let mpow: Vec<f64> = (m / 2 + 1..=m).map(|k| (k as f64 / mf).powf(alpha)).collect();
    let rows: Vec<f64> = (h / 2 + 1..=h)
        .into_par_iter()
        .map(|hh| {
            let hp = (hh as f64 / hf).powf(beta);
            let mut row = 0.0;
            for nn in n / 2 + 1..=n {
                let c = x * hp * (nn as f64 / nf).powf(gamma_e);
                let terms: Vec<Complex64> = mpow.iter().map(|&mp| e(c * mp)).collect();
                row += pairwise_sum(&terms).norm();
            }
            row
        })
        .collect();
    let s: f64 = rows.iter().sum();
    let hnm = hf * nf * mf;
    let xa = x.abs();
    let bound = hnm.powf(1.0 + BOUND_EPS) * ((xa / (hnm * mf)).powf(0.25) + mf.powf(-0.5) + 1.0 / xa);
    Ok(TrilinearSum { h, n, m, x, s, bound, ratio: s / bound })
}
