//! Independent oracle for the frozen `count_P7` fixture: plain prime sieve,
//! floors from 200-bit MPFR powers, trial-division Ω.

use ps_sieve_lab::ps_counts::{count_p7, PsInstance};
use ps_sieve_lab::suite::P7_COUNT_FIXTURE;
use rug::ops::Pow;
use rug::Float;

fn omega_trial(mut n: u64) -> u32 {
    let mut k = 0;
    let mut q = 2;
    while q * q <= n {
        while n % q == 0 {
            n /= q;
            k += 1;
        }
        q += 1;
    }
    k + u32::from(n > 1)
}

fn primes_upto(n: usize) -> Vec<u64> {
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            for j in (i * i..=n).step_by(i) {
                comp[j] = true;
            }
        }
    }
    out
}

#[test]
fn p7_fixture_matches_trial_division() {
    let (x, gamma) = (1_000_000u64, 0.99);
    let p_max = Float::with_val(200, x).pow(Float::with_val(200, gamma)).floor().to_f64() as usize;
    assert_eq!(p_max, 870_963);
    let inv = Float::with_val(200, 1) / Float::with_val(200, gamma);
    let mut count = 0u64;
    for p in primes_upto(p_max) {
        let a = Float::with_val(200, p).pow(&inv).floor().to_f64() as u64;
        if omega_trial(a) <= 7 {
            count += 1;
        }
    }
    assert_eq!(count, P7_COUNT_FIXTURE);
    let inst = PsInstance::new(x, gamma).unwrap();
    assert_eq!(count_p7(&inst, 7, false).unwrap().count, count);
}
