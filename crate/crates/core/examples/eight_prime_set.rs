//! The eight-prime set B, its main term X and the remainders R_d, checked
//! against a direct count of E_d.
//!
//! cargo run --release --example eight_prime_set -- 1e10

use ps_sieve_lab::config::parse_scale;
use ps_sieve_lab::ps_counts::{curly_x, enumerate_b, remainder_r_frak, PsInstance};

fn main() -> ps_sieve_lab::Result<()> {
    let x = std::env::args().nth(1).map(|s| parse_scale(&s).expect("x")).unwrap_or(10_000_000_000);
    let inst = PsInstance::new(x, 0.99)?;
    let b = enumerate_b(&inst)?;
    println!("x={x}: |B| = {}", b.members.len());
    if let (Some(lo), Some(hi)) = (b.members.first(), b.members.last()) {
        println!("  smallest {lo}, largest {hi}");
    }
    let cx = curly_x(&inst, &b);
    println!("X = {:.6} (leading term {:.6}, difference {:.2e})", cx.value, cx.leading, cx.difference);
    for d in 1..=inst.d_max.min(12) {
        let r = remainder_r_frak(&inst, &b, d)?;
        println!(
            "  d={d:>2}: #E_d = {:>4} = X/d {:>9.4} + R_d {:+.4}  (residual {:.1e})",
            r.card_e_d, r.x_over_d, r.r_frak, r.residual
        );
    }
    Ok(())
}
