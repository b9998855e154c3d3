//! Admissibility constraints and exponent budgets for one gamma, with the
//! tightest items listed first.
//!
//! cargo run --example admissibility -- 0.9895

use ps_sieve_lab::params::{
    check_admissible, exponent_budget_s0, exponent_budget_type_i, exponent_budget_type_ii, make_params,
    BalogFriedlanderWindow, DEFAULT_EPSILON, DEFAULT_ETA,
};

fn main() -> ps_sieve_lab::Result<()> {
    let gamma: f64 = std::env::args().nth(1).map(|s| s.parse().expect("gamma")).unwrap_or(0.9895);
    let p = make_params(gamma, DEFAULT_ETA, DEFAULT_EPSILON)?;
    println!("gamma {gamma}: xi {:.8}, u {:.6}, lambda {:.6}, sieve s {:.6}", p.xi, p.u, p.lambda_w, p.sieve_s());

    let w = BalogFriedlanderWindow::of(&p);
    println!("windows a={:.6} b={:.6} c={:.6}", w.a_frak, w.b_frak, w.c_frak);

    let mut report = check_admissible(&p);
    report.constraints.sort_by(|a, b| a.slack.total_cmp(&b.slack));
    for c in &report.constraints {
        println!("  {:<26} {:<18} slack {:+.3e} {}", c.name, c.anchor, c.slack, if c.pass { "ok" } else { "FAIL" });
    }

    for b in [exponent_budget_type_ii(&p), exponent_budget_type_i(&p), exponent_budget_s0(&p)] {
        let worst = b.worst();
        println!(
            "{:<7} mu in [{:.5}, {:.5}], worst {} at mu={:.5}: {:.9} <= {} - {:.2e}",
            b.name, b.mu_lo, b.mu_hi, worst.label, worst.mu, worst.value, b.bound, b.delta
        );
        for f in &b.feasibility {
            println!("    {:<34} {:+.4e}", f.name, f.value);
        }
    }
    Ok(())
}
