//! Empirical ratios for the lattice-point, trilinear-sum and sawtooth
//! truncation estimates. The frozen constants are regression ceilings for
//! one configuration each (J=L=D=8; H,N,M,X = 16,16,64,32); other shapes
//! can and do exceed them.

use ps_sieve_lab::exp_sums::{
    lattice_count_inclusive, lattice_count_oracle, psi_truncation_check, trilinear_sum_check,
    uniform_samples, C22, C24, C25,
};
use ps_sieve_lab::params::MC_SEED;

fn main() -> ps_sieve_lab::Result<()> {
    for (j, l, d) in [(8u64, 8u64, 8u64), (16, 16, 16), (32, 16, 8)] {
        for delta in [1e-6, 1e-4, 1e-2] {
            let s = lattice_count_oracle(j, l, d, delta, 0.99)?;
            let i = lattice_count_inclusive(j, l, d, delta, 0.99)?;
            println!(
                "lattice J={j} L={l} D={d} delta={delta:e}: count {} (inclusive {}), ratio {:.4}",
                s.count, i.count, s.ratio
            );
        }
    }

    for x in [1.0, 32.0, 1e3, 1e5] {
        let t = trilinear_sum_check(16, 16, 64, x, 1.0 / 0.99, 1.0, 1.0)?;
        println!("trilinear X={x:e}: S {:.2}, bound {:.1}, ratio {:.6}", t.s, t.bound, t.ratio);
    }

    let ts = uniform_samples(10_000, MC_SEED);
    println!("ceilings: C24 = {C24}, C25 = {C25}, C22 = {C22}");
    for h in [10, 100, 1000] {
        let r = psi_truncation_check(&ts, h)?;
        println!("psi H={h}: max ratio {:.5} at t={:.6}", r.max_ratio, r.worst_t);
    }
    Ok(())
}
