use crate::error::{domain, Result};

use super::sieve::{small_primes, trial_factor};

/// von Mangoldt's `Λ(n)` by trial division.
pub fn lambda_of(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(domain("Λ(0) is undefined"));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let f = trial_factor(n, 2);
    Ok(if f.len() == 1 { (f[0].0 as f64).ln() } else { 0.0 })
}

/// Möbius function by trial division.
pub fn mobius_of(n: u64) -> i32 {
    if n == 1 {
        return 1;
    }
    let f = trial_factor(n, 2);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Π_{p<z} (1 − 1/p)`.
pub fn mertens_product(z: u64) -> Result<f64> {
    if z < 3 {
        return Err(domain(format!("mertens_product needs z ≥ 3, got {z}")));
    }
    Ok(small_primes(z - 1)
        .into_iter()
        .map(|p| 1.0 - 1.0 / p as f64)
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EULER_GAMMA;

    #[test]
    fn lambda_small() {
        assert!((lambda_of(8).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(lambda_of(12).unwrap(), 0.0);
        assert_eq!(lambda_of(1).unwrap(), 0.0);
        assert!(lambda_of(0).is_err());
    }

    #[test]
    fn psi_of_thousand() {
        // ψ(1000) from the prime-power list, independent of trial_factor
        let mut oracle = 0.0;
        for p in small_primes(1000) {
            let mut q = p as u64;
            while q <= 1000 {
                oracle += (p as f64).ln();
                q *= p as u64;
            }
        }
        let total: f64 = (1..=1000).map(|n| lambda_of(n).unwrap()).sum();
        assert!((total - oracle).abs() < 1e-9);
        assert!((total - 996.680_912_247_175_3).abs() < 1e-9);
    }

    #[test]
    fn mertens_small() {
        assert_eq!(mertens_product(3).unwrap(), 0.5);
        assert!((mertens_product(11).unwrap() - 8.0 / 35.0).abs() < 1e-15);
        assert!((mertens_product(12).unwrap() - 16.0 / 77.0).abs() < 1e-15);
        assert!(mertens_product(2).is_err());
    }

    #[test]
    fn mertens_third_theorem() {
        let z = 1_000_000u64;
        let v = mertens_product(z).unwrap();
        assert!((EULER_GAMMA.exp() * (z as f64).ln() * v - 1.0).abs() < 0.01);
    }

    #[test]
    fn mertens_decreasing_over_primes() {
        let ps = small_primes(2000);
        let mut prev = f64::INFINITY;
        for &p in &ps[1..] {
            let v = mertens_product(p as u64 + 1).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }
}
