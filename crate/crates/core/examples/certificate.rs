//! Grid certificate for the eight-prime partition window, with a deliberately
//! narrow window to show what a failure looks like.
//!
//! cargo run --release --example certificate -- 0.005

use std::time::Instant;

use ps_sieve_lab::params::make_params;
use ps_sieve_lab::partial_products::{
    exhaustive_certify, mask_indices, subset_hit, window_inside_analytic, SimplexPoint, WindowConstants,
};

fn main() -> ps_sieve_lab::Result<()> {
    let step: f64 = std::env::args().nth(1).map(|s| s.parse().expect("step")).unwrap_or(5e-3);
    let w = WindowConstants::default();

    let pt = SimplexPoint::new([0.125; 8], 0.01)?;
    let hit = subset_hit(&pt, &w);
    println!("equal split: witness {:?}", hit.witness.map(mask_indices));

    let t0 = Instant::now();
    let r = exhaustive_certify(step, 0.01, &w)?;
    println!(
        "step {step}: {} points ({} visited), {} counterexamples, min margin {:.6}, {:.2?}",
        r.points_checked,
        r.points_visited,
        r.counterexample_count,
        r.min_margin,
        t0.elapsed()
    );
    r.ensure_certified()?;

    let narrow = WindowConstants::new(0.70, 0.71)?;
    let bad = exhaustive_certify(step, 0.01, &narrow)?;
    println!("window [0.70, 0.71]: {} counterexamples", bad.counterexample_count);
    if let Some(c) = bad.counterexamples.first() {
        let best = c.subset_sums.iter().min_by(|a, b| (a.1 - 0.705).abs().total_cmp(&(b.1 - 0.705).abs())).unwrap();
        println!("  t = {:?}\n  closest subset {:?} sums to {:.4}", c.t, best.0, best.1);
    }

    for gamma in [0.989, 0.992, 0.995, 0.999] {
        let s = window_inside_analytic(&make_params(gamma, 0.0, 1e-9)?, &w)?;
        println!("gamma {gamma}: slack below {:+.3e}, above {:+.3e}", s.lower_slack, s.upper_slack);
    }
    Ok(())
}
