use std::collections::BTreeMap;

use crate::error::{domain, Result};

use super::functions::mobius_of;
use super::sieve::icbrt;

/// One ordered factorization `n = m₁⋯m₂ⱼ` contributing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct HbTerm {
    pub j: usize,
    pub factors: Vec<u64>,
    pub weight: f64,
}

const BINOM3: [i64; 4] = [1, 3, 3, 1];

fn check(n: u64, x: u64) -> Result<()> {
    if x < 8 {
        return Err(domain(format!("cutoff X={x} must be at least 8")));
    }
    if 2 * n <= x || n > x {
        return Err(domain(format!("n={n} outside the dyadic window (X/2, X] for X={x}")));
    }
    Ok(())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Walk every ordered factorization of `rest` into `slots` factors, the first
/// `capped` of which are squarefree and at most `k`. Calls `leaf` with the
/// tuple and the product of the capped factors' Möbius values.
fn expand(
    rest: u64,
    slots: usize,
    capped: usize,
    k: u64,
    divs: &[u64],
    tuple: &mut Vec<u64>,
    sign: i64,
    leaf: &mut dyn FnMut(&[u64], i64),
) {
    if slots == 1 {
        tuple.push(rest);
        leaf(tuple, sign);
        tuple.pop();
        return;
    }
    let in_cap = capped > 0;
    for &d in divs {
        if d > rest {
            break;
        }
        if rest % d != 0 {
            continue;
        }
        let s = if in_cap {
            if d > k {
                break;
            }
            let mu = mobius_of(d) as i64;
            if mu == 0 {
                continue;
            }
            sign * mu
        } else {
            sign
        };
        tuple.push(d);
        expand(rest / d, slots - 1, capped.saturating_sub(1), k, divs, tuple, s, leaf);
        tuple.pop();
    }
}

/// Integer coefficients `c_m` with `Σ c_m log m` equal to the identity's value.
fn coefficients(n: u64, x: u64) -> BTreeMap<u64, i64> {
    let k = icbrt(x);
    let divs = divisors(n);
    let mut coef = BTreeMap::new();
    for j in 1..=3usize {
        let outer = BINOM3[j] * if j % 2 == 1 { 1 } else { -1 };
        let mut tuple = Vec::with_capacity(2 * j);
        expand(n, 2 * j, j, k, &divs, &mut tuple, 1, &mut |t, s| {
            *coef.entry(t[2 * j - 1]).or_insert(0) += outer * s;
        });
    }
    coef
}

/// `Λ(n)` evaluated through the three-fold Heath-Brown identity with cutoff
/// `⌊X^{1/3}⌋` on the Möbius variables.
pub fn heath_brown_lambda(n: u64, x: u64) -> Result<f64> {
    check(n, x)?;
    Ok(coefficients(n, x)
        .into_iter()
        .filter(|&(m, c)| c != 0 && m > 1)
        .map(|(m, c)| c as f64 * (m as f64).ln())
        .sum())
}

/// Every nonzero term of the identity for `n`, in enumeration order.
pub fn heath_brown_terms(n: u64, x: u64) -> Result<Vec<HbTerm>> {
    check(n, x)?;
    let k = icbrt(x);
    let divs = divisors(n);
    let mut out = Vec::new();
    for j in 1..=3usize {
        let outer = (BINOM3[j] * if j % 2 == 1 { 1 } else { -1 }) as f64;
        let mut tuple = Vec::with_capacity(2 * j);
        expand(n, 2 * j, j, k, &divs, &mut tuple, 1, &mut |t, s| {
            let last = t[2 * j - 1];
            if last > 1 {
                out.push(HbTerm {
                    j,
                    factors: t.to_vec(),
                    weight: outer * s as f64 * (last as f64).ln(),
                });
            }
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith_core::lambda_of;

    #[test]
    fn prime_and_composite() {
        assert!((heath_brown_lambda(97, 150).unwrap() - 97f64.ln()).abs() < 1e-12);
        assert!(heath_brown_lambda(96, 150).unwrap().abs() < 1e-12);
    }

    #[test]
    fn window_errors() {
        assert!(heath_brown_lambda(75, 150).is_err());
        assert!(heath_brown_lambda(151, 150).is_err());
        assert!(heath_brown_lambda(5, 7).is_err());
    }

    #[test]
    fn exhaustive_windows() {
        for x in [100u64, 300, 1000] {
            for n in x / 2 + 1..=x {
                let hb = heath_brown_lambda(n, x).unwrap();
                assert!((hb - lambda_of(n).unwrap()).abs() < 1e-9, "n={n} X={x}");
            }
        }
    }

    #[test]
    fn terms_respect_cutoff_and_product() {
        let terms = heath_brown_terms(720, 1000).unwrap();
        assert!(!terms.is_empty());
        for t in &terms {
            assert_eq!(t.factors.len(), 2 * t.j);
            assert_eq!(t.factors.iter().product::<u64>(), 720);
            assert!(t.factors[..t.j].iter().all(|&m| m <= 10));
        }
        let total: f64 = terms.iter().map(|t| t.weight).sum();
        assert!(total.abs() < 1e-9);
    }
}
