//! Desk-scale counts over A = {[p^(1/gamma)] : p <= x^gamma}: almost-prime
//! counts, remainders in arithmetic progressions and the weighted sum.
//!
//! cargo run --release --example almost_primes -- 1e6 0.99

use ps_sieve_lab::config::parse_scale;
use ps_sieve_lab::ps_counts::{count_p7, remainders, weighted_w, PsInstance};

fn main() -> ps_sieve_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let x = args.next().map(|s| parse_scale(&s).expect("x")).unwrap_or(1_000_000);
    let gamma: f64 = args.next().map(|s| s.parse().expect("gamma")).unwrap_or(0.99);
    let inst = PsInstance::new(x, gamma)?;
    println!(
        "x={x} gamma={gamma}: p <= {}, z = {:.4} (largest sifted q = {}), d <= {}",
        inst.p_max,
        inst.z(),
        inst.below_z,
        inst.d_max
    );

    for omega_max in [3, 5, 7] {
        for sifted in [false, true] {
            let c = count_p7(&inst, omega_max, sifted)?;
            println!(
                "  Omega <= {omega_max}{}: {} primes, {:.4} x x^g/log^2 x",
                if sifted { ", sifted" } else { "" },
                c.count,
                c.ratio
            );
        }
    }

    let ds: Vec<u64> = (1..=inst.d_max).collect();
    let t = remainders(&inst, &ds)?;
    println!("pi(x^gamma) = {}", t.pi_x_gamma);
    for r in &t.records {
        println!("  d={:>3}: #A_d = {:>6}, main {:>10.2}, R_d {:+.2}", r.d, r.card_ad, r.main_term, r.r_d);
    }

    let w = weighted_w(&inst)?;
    println!(
        "W = {:.2} over {} survivors; Omega <= 7 carries {:.2}, squarefree Omega = 8 carries {:.2}",
        w.w, w.survivors, w.low.weight, w.eight_squarefree.weight
    );
    Ok(())
}
