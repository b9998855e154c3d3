//! Λ(n) recovered from the three-term combinatorial identity, term by term.
//!
//! cargo run --example heath_brown -- 840 1000

use ps_sieve_lab::arith_core::{heath_brown_lambda, heath_brown_terms, lambda_of};

fn main() -> ps_sieve_lab::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer"));
    let n = args.next().unwrap_or(961);
    let x = args.next().unwrap_or(1000);

    let terms = heath_brown_terms(n, x)?;
    println!("n = {n}, X = {x}: {} nonzero terms", terms.len());
    for t in terms.iter().take(12) {
        println!("  j={} factors {:?} weight {:+.6}", t.j, t.factors, t.weight);
    }
    let total: f64 = terms.iter().map(|t| t.weight).sum();
    println!("sum {total:.12}, identity {:.12}, Lambda(n) {:.12}", heath_brown_lambda(n, x)?, lambda_of(n)?);

    let worst = (x / 2 + 1..=x)
        .map(|m| (heath_brown_lambda(m, x).unwrap() - lambda_of(m).unwrap()).abs())
        .fold(0.0, f64::max);
    println!("max error over ({}, {x}]: {worst:.2e}", x / 2);
    Ok(())
}
