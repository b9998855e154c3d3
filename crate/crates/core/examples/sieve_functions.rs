//! Upper and lower linear-sieve functions from their delay equations.

use ps_sieve_lab::sieve_functions::{default_table, dde_residual, eval_F, eval_f, SieveFunctionTable};

fn main() -> ps_sieve_lab::Result<()> {
    // (sF)' has a corner at s = 3, so the central difference there is only O(h)
    println!("{:>6} {:>12} {:>12} {:>10}", "s", "F(s)", "f(s)", "residual");
    for s in [1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0] {
        let r = dde_residual(s, 1e-4).map(|(a, b)| format!("{:.1e}", a.max(b))).unwrap_or_else(|_| "-".into());
        println!("{s:>6.2} {:>12.8} {:>12.8} {r:>10}", eval_F(s)?, eval_f(s)?);
    }

    // a coarser table converges to the default one
    let coarse = SieveFunctionTable::new(1e-3, 6.0)?;
    let fine = default_table();
    for s in [4.5, 5.5] {
        println!("f({s}): step 1e-3 {:.9}, step 1e-4 {:.9}", coarse.lower(s)?, fine.lower(s)?);
    }
    Ok(())
}
