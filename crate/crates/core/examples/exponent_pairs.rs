//! Exact exponent-pair arithmetic: words in the A and B processes applied to
//! the trivial pair, and a monomial sum measured against the resulting bound.
//!
//! cargo run --example exponent_pairs -- BA3B A2B

use ps_sieve_lab::exp_sums::{apply_word, monomial_exp_sum, ExponentPair};

fn main() -> ps_sieve_lab::Result<()> {
    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = ["B", "AB", "A2B", "BA3B", "A3B", "BABA2B"].map(String::from).to_vec();
    }
    let start = ExponentPair::trivial();
    for w in &words {
        let p = apply_word(w, &start)?;
        let (k, l) = p.to_f64();
        println!("{w:>8}: {p:<16} = ({k:.6}, {l:.6}), valid {}", p.is_valid());
    }

    let pair = apply_word("BA3B", &start)?;
    for (a, amp) in [(1000u64, 1e4), (10_000, 1e6), (100_000, 1e8)] {
        let s = monomial_exp_sum(a, 2 * a, amp, 1.0 / 0.99)?;
        println!(
            "sum over ({a}, {}] of e({amp:e} (n/a)^(1/0.99)): |S| = {:.2}, pair bound {:.2}",
            2 * a,
            s.abs(),
            s.bound(&pair)
        );
    }
    Ok(())
}
