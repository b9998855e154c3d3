//! Segmented smallest-prime-factor sieve and the arithmetic functions read off it.
//!
//! cargo run --release --example sieve -- 1000000

use ps_sieve_lab::arith_core::{build_sieve, mertens_product, segments};

fn main() -> ps_sieve_lab::Result<()> {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().expect("limit")).unwrap_or(1_000_000);

    let fs = build_sieve(2, 1000)?;
    for m in [360u64, 997, 999, 1000] {
        println!(
            "{m}: factors {:?}, Omega {}, omega {}, mu {}, Lambda {:.6}",
            fs.factorize(m),
            fs.big_omega(m),
            fs.small_omega(m),
            fs.mobius(m),
            fs.mangoldt(m)
        );
    }

    // π(n) and ψ(n) streamed over segments, never holding the whole range
    let (mut pi, mut psi) = (0u64, 0.0f64);
    for seg in segments(2, n, 1 << 18)? {
        pi += seg.primes().count() as u64;
        psi += (seg.lo()..=seg.hi()).map(|m| seg.mangoldt(m)).sum::<f64>();
    }
    println!("pi({n}) = {pi}, psi({n}) = {psi:.4}, psi/n = {:.6}", psi / n as f64);

    for z in [10u64, 100, 10_000] {
        let v = mertens_product(z)?;
        println!("prod_(p<{z}) (1 - 1/p) = {v:.6}, times log z = {:.6}", v * (z as f64).ln());
    }
    Ok(())
}
