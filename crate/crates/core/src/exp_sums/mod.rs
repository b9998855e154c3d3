//! Exponent pairs and empirical checks of the exponential-sum lemmas.
//!
//! The lemmas are stated with `≪`, so each check reports a ratio to the
//! bound. The `C22`, `C24`, `C25` ceilings below were measured once on the
//! reference inputs and are frozen; a later run exceeding one is a
//! regression.

mod lattice;
mod pairs;
mod sums;
mod trilinear;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use lattice::{lattice_count_inclusive, lattice_count_oracle, LatticeCount, BOUND_EPS};
pub use pairs::{apply_process, apply_word, parse_word, ExponentPair, Process};
pub use sums::{
    dist_to_int, e, monomial_exp_sum, pairwise_sum, psi, psi_truncation_check,
    psi_truncation_error, MonomialSum, PsiCheck,
};
pub use trilinear::{trilinear_sum_check, TrilinearSum};

/// Ceiling on the ψ truncation ratio at `H ∈ {10, 100, 1000}`.
pub const C22: f64 = 0.5;
/// Ceiling on lattice count / bound at `J = L = D = 8`, `γ = 0.99`.
pub const C24: f64 = 0.18;
/// Ceiling on trilinear sum / bound at `(H, N, M, X) = (16, 16, 64, 32)`.
pub const C25: f64 = 0.0083;
/// Ceiling on the monomial sum / bound with pair `(1/2, 1/2)` at the reference instance.
pub const C23: f64 = 0.038;

/// `count` samples uniform on `[0, 100)` from a seeded stream.
pub fn uniform_samples(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| 100.0 * rng.random::<f64>()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn frozen_ceilings_hold() {
        let t = uniform_samples(10_000, 0x5EED);
        for h in [10, 100, 1000] {
            let r = psi_truncation_check(&t, h).unwrap().max_ratio;
            assert!(r <= C22 && r <= 5.0, "H={h}: {r}");
        }
        for delta in [1e-6, 1e-4] {
            assert!(lattice_count_oracle(8, 8, 8, delta, 0.99).unwrap().ratio <= C24);
        }
        assert!(trilinear_sum_check(16, 16, 64, 32.0, 1.0 / 0.99, 1.0, 1.0).unwrap().ratio <= C25);
        let m = monomial_exp_sum(1000, 2000, 300.0, 1.0 / 0.99).unwrap();
        let half = ExponentPair::new(Rational::from((1, 2)), Rational::from((1, 2)));
        assert!(m.abs() <= C23 * m.bound(&half));
    }
}
