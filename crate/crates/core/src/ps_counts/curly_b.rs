use rug::ops::PowAssign;
use rug::Float;
use serde::Serialize;

use super::floor::{floor_pow, floor_root_pow};
use super::PsInstance;
use crate::arith_core::small_primes;
use crate::error::{domain, Error, Result};

/// Products `p₁⋯p₈ ≤ x` of eight distinct primes, each at least `x^{1/17.41}`.
#[derive(Clone, Debug, Serialize)]
pub struct CurlyB {
    pub members: Vec<u64>,
}

pub fn enumerate_b(inst: &PsInstance) -> Result<CurlyB> {
    let x = inst.x as u128;
    // the seven smallest admissible primes bound the largest eighth factor
    let mut first = Vec::new();
    let mut lim = 64;
    while first.len() < 7 {
        first = small_primes(lim).into_iter().map(u64::from).filter(|&p| !inst.is_below_z(p)).take(7).collect();
        lim *= 2;
    }
    let prod7: u128 = first.iter().map(|&p| p as u128).product();
    if prod7 > x {
        return Ok(CurlyB { members: Vec::new() });
    }
    let top = (x / prod7) as u64;
    let primes: Vec<u64> = small_primes(top).into_iter().map(u64::from).filter(|&p| !inst.is_below_z(p)).collect();
    let mut members = Vec::new();
    dfs(&primes, 0, 0, 1, x, &mut members);
    members.sort_unstable();
    Ok(CurlyB { members })
}

fn dfs(primes: &[u64], k: usize, start: usize, prefix: u128, x: u128, out: &mut Vec<u64>) {
    let remaining = 8 - k as u32;
    for i in start..primes.len() {
        let p = primes[i] as u128;
        // the remaining factors are all at least p
        match p.checked_pow(remaining).and_then(|v| v.checked_mul(prefix)) {
            Some(v) if v <= x => {}
            _ => break,
        }
        if remaining == 1 {
            out.push((prefix * p) as u64);
        } else {
            dfs(primes, k + 1, i + 1, prefix * p, x, out);
        }
    }
}

/// `(ℓ+1)^γ − ℓ^γ` as `ℓ^γ · expm1(γ · log1p(1/ℓ))`.
pub fn gap(l: u64, gamma: f64) -> f64 {
    let lf = l as f64;
    lf.powf(gamma) * (gamma * (1.0 / lf).ln_1p()).exp_m1()
}

#[derive(Clone, Debug, Serialize)]
pub struct CurlyX {
    pub members: usize,
    pub value: f64,
    /// `Σ γ ℓ^{γ−1}`.
    pub leading: f64,
    pub difference: f64,
}

pub fn curly_x(inst: &PsInstance, b: &CurlyB) -> CurlyX {
    let g = inst.gamma;
    let value: f64 = b.members.iter().map(|&l| gap(l, g)).sum();
    let leading: f64 = b.members.iter().map(|&l| g * (l as f64).powf(g - 1.0)).sum();
    CurlyX { members: b.members.len(), value, leading, difference: value - leading }
}

#[derive(Clone, Debug, Serialize)]
pub struct RFrakRecord {
    pub d: u64,
    pub r_frak: f64,
    /// `#ℰ_d` by direct membership.
    pub card_e_d: u64,
    pub x_over_d: f64,
    /// `#ℰ_d − (𝒳/d + ℛ_d)`.
    pub residual: f64,
}

fn psi_neg_over(v: &Float, d: u64) -> f64 {
    let y = Float::with_val(v.prec(), -v) / d;
    let fl = Float::with_val(v.prec(), y.floor_ref());
    (y - fl).to_f64() - 0.5
}

/// `ℛ_d = Σ_{ℓ∈ℬ} (ψ(−(ℓ+1)^γ/d) − ψ(−ℓ^γ/d))` with the powers at 256 bits,
/// checked against a direct count of `n` with `[n^{1/γ}] ∈ ℬ`, `d | n`.
pub fn remainder_r_frak(inst: &PsInstance, b: &CurlyB, d: u64) -> Result<RFrakRecord> {
    if d < 1 || d > inst.d_max {
        return Err(domain(format!("modulus d={d} outside [1, x^xi] = [1, {}]", inst.d_max)));
    }
    let g = inst.gamma;
    let mut r = 0.0;
    let mut card = 0u64;
    for &l in &b.members {
        let mut lo = Float::with_val(256, l);
        lo.pow_assign(g);
        let mut hi = Float::with_val(256, l + 1);
        hi.pow_assign(g);
        r += psi_neg_over(&hi, d) - psi_neg_over(&lo, d);
        // the interval [ℓ^γ, (ℓ+1)^γ) is shorter than 1
        let c = floor_pow(l, g)?;
        for n in [c, c + 1] {
            if n >= 1 && n % d == 0 && floor_root_pow(n, g)? == l {
                card += 1;
            }
        }
    }
    let x_over_d = curly_x(inst, b).value / d as f64;
    let residual = card as f64 - (x_over_d + r);
    if residual.abs() > 1e-6 {
        return Err(Error::Precision(format!(
            "#E_d = {card} but X/d + R_d = {} at d={d}",
            x_over_d + r
        )));
    }
    Ok(RFrakRecord { d, r_frak: r, card_e_d: card, x_over_d, residual })
}

/// Members `n` of `ℰ_d`, for round-trip checks.
pub fn members_e_d(inst: &PsInstance, b: &CurlyB, d: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for &l in &b.members {
        let c = floor_pow(l, inst.gamma)?;
        for n in [c, c + 1] {
            if n >= 1 && n % d == 0 && floor_root_pow(n, inst.gamma)? == l {
                out.push(n);
            }
        }
    }
    Ok(out)
}
