use std::cmp::Ordering;

use rug::float::Round;
use rug::ops::PowAssignRound;
use rug::Float;

use crate::error::{domain, Error, Result};

const FAST_MARGIN: f64 = 1.0 / (1u64 << 40) as f64;
const PRECISIONS: [u32; 4] = [128, 256, 512, 1024];

/// Compare `base^expo` with the integer `target`. `expo` is taken as the
/// exact binary value of the `f64`. A double-precision estimate decides
/// whenever it is clear of `target` by a relative `2^-40`; otherwise MPFR
/// brackets the power with downward and upward rounding at rising precision.
pub fn cmp_pow(base: u64, expo: f64, target: u64) -> Result<Ordering> {
    let v = (base as f64).powf(expo);
    let t = target as f64;
    if v < t * (1.0 - FAST_MARGIN) {
        return Ok(Ordering::Less);
    }
    if v > t * (1.0 + FAST_MARGIN) {
        return Ok(Ordering::Greater);
    }
    for prec in PRECISIONS {
        let mut lo = Float::with_val(prec, base);
        lo.pow_assign_round(expo, Round::Down);
        let mut hi = Float::with_val(prec, base);
        hi.pow_assign_round(expo, Round::Up);
        if hi < target {
            return Ok(Ordering::Less);
        }
        if lo > target {
            return Ok(Ordering::Greater);
        }
        if lo == target && hi == target {
            return Ok(Ordering::Equal);
        }
    }
    Err(Error::Precision(format!(
        "cannot order {base}^{expo} against {target} at {} bits",
        PRECISIONS[PRECISIONS.len() - 1]
    )))
}

/// `⌊p^{1/γ}⌋`: the largest `k` with `k^γ ≤ p`.
pub fn floor_root_pow(p: u64, gamma: f64) -> Result<u64> {
    if p < 1 {
        return Err(domain("floor_root_pow needs p ≥ 1"));
    }
    if !(gamma >= 0.5 && gamma <= 1.0) {
        return Err(domain(format!("gamma={gamma} outside [1/2, 1]")));
    }
    let mut k = (p as f64).powf(1.0 / gamma).floor() as u64;
    while k > 0 && cmp_pow(k, gamma, p)? == Ordering::Greater {
        k -= 1;
    }
    while cmp_pow(k + 1, gamma, p)? != Ordering::Greater {
        k += 1;
    }
    Ok(k)
}

/// `⌊n^θ⌋` for `0 < θ < 1`: the largest `c` with `c ≤ n^θ`.
pub fn floor_pow(n: u64, theta: f64) -> Result<u64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(domain(format!("exponent {theta} outside (0, 1)")));
    }
    let mut c = (n as f64).powf(theta).floor() as u64;
    while c > 0 && cmp_pow(n, theta, c)? == Ordering::Less {
        c -= 1;
    }
    while cmp_pow(n, theta, c + 1)? != Ordering::Less {
        c += 1;
    }
    Ok(c)
}

/// `⌊(p^{1/γ} − shift)/d⌋` for `shift ∈ {0, 1}`: the largest `q ≥ 0` with
/// `(qd + shift)^γ ≤ p`. Built from its own floating candidate, so it is an
/// independent route to the floor-difference count.
pub fn floor_scaled_root(p: u64, gamma: f64, d: u64, shift: u64) -> Result<u64> {
    let ok = |q: u64| -> Result<bool> {
        let k = q * d + shift;
        Ok(k == 0 || cmp_pow(k, gamma, p)? != Ordering::Greater)
    };
    let est = ((p as f64).powf(1.0 / gamma) - shift as f64) / d as f64;
    let mut q = est.max(0.0).floor() as u64;
    while q > 0 && !ok(q)? {
        q -= 1;
    }
    while ok(q + 1)? {
        q += 1;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_and_known() {
        assert_eq!(floor_root_pow(2, 0.5).unwrap(), 4);
        assert_eq!(floor_root_pow(97, 0.99).unwrap(), 101);
        assert_eq!(cmp_pow(4, 0.5, 2).unwrap(), Ordering::Equal);
        assert_eq!(floor_pow(1_000_000, 0.5).unwrap(), 1000);
        assert_eq!(floor_pow(999_999, 0.5).unwrap(), 999);
    }

    #[test]
    fn against_mpfr_oracle() {
        // oracle: 200-bit nearest evaluation of p^{1/γ}, far from integers on this range
        let g = 0.99;
        for p in (2..20_000u64).step_by(37) {
            let mut r = Float::with_val(200, p);
            let inv = Float::with_val(200, 1) / Float::with_val(200, g);
            r.pow_assign_round(&inv, Round::Nearest);
            let oracle = r.floor().to_integer().unwrap().to_u64().unwrap();
            assert_eq!(floor_root_pow(p, g).unwrap(), oracle, "p={p}");
        }
    }

    #[test]
    fn scaled_root_matches_floor_of_floor() {
        for p in 2..3000u64 {
            let a = floor_root_pow(p, 0.9).unwrap();
            for d in 1..12 {
                assert_eq!(floor_scaled_root(p, 0.9, d, 0).unwrap(), a / d);
                assert_eq!(floor_scaled_root(p, 0.9, d, 1).unwrap(), (a - 1) / d);
            }
        }
    }

    proptest! {
        #[test]
        fn monotone(p in 2u64..1_000_000_000, g in 0.6f64..0.999) {
            let a = floor_root_pow(p, g).unwrap();
            let b = floor_root_pow(p + 1, g).unwrap();
            prop_assert!(a <= b);
        }

        #[test]
        fn bracket_holds(p in 2u64..1_000_000_000, g in 0.6f64..0.999) {
            let k = floor_root_pow(p, g).unwrap();
            prop_assert!(cmp_pow(k, g, p).unwrap() != Ordering::Greater);
            prop_assert!(cmp_pow(k + 1, g, p).unwrap() == Ordering::Greater);
        }

        #[test]
        fn floor_pow_roundtrip(n in 2u64..1_000_000_000_000, g in 0.5f64..0.999) {
            let c = floor_pow(n, g).unwrap();
            prop_assert!(cmp_pow(n, g, c).unwrap() != Ordering::Less);
            prop_assert!(cmp_pow(n, g, c + 1).unwrap() == Ordering::Less);
        }
    }
}
