use rayon::prelude::*;

use crate::error::{domain, Error, Result};

/// Segment geometry for [`FactorSieve`] construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub segment_len: u64,
    pub max_segments: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: 1 << 20,
            max_segments: 128,
        }
    }
}

impl SieveConfig {
    pub fn max_span(&self) -> u64 {
        self.segment_len.saturating_mul(self.max_segments)
    }
}

/// Smallest-prime-factor table on the closed range `[lo, hi]`, together with
/// `Ω` and `ω` for every entry.
#[derive(Clone, Debug)]
pub struct FactorSieve {
    lo: u64,
    hi: u64,
    spf: Vec<u32>,
    big_omega: Vec<u8>,
    omega: Vec<u8>,
}

/// Primes `≤ limit` by a plain sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u32> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn icbrt(n: u64) -> u64 {
    let mut r = (n as f64).cbrt() as u64;
    while r > 0 && r * r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo < 2 {
        return Err(domain(format!("sieve range must start at 2 or above, got lo={lo}")));
    }
    if hi <= lo {
        return Err(domain(format!("empty sieve range [{lo}, {hi}]")));
    }
    if hi > u32::MAX as u64 {
        return Err(domain(format!("sieve entries are 32-bit, hi={hi} too large")));
    }
    Ok(())
}

pub fn build_sieve(lo: u64, hi: u64) -> Result<FactorSieve> {
    build_sieve_with(lo, hi, &SieveConfig::default())
}

pub fn build_sieve_with(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<FactorSieve> {
    check_range(lo, hi)?;
    let span = hi - lo + 1;
    if span > cfg.max_span() {
        return Err(Error::Resource {
            what: format!("sieve span {span} entries"),
            limit: cfg.max_span(),
        });
    }
    let base = small_primes(isqrt(hi));
    let seg = cfg.segment_len.max(1);
    let starts: Vec<u64> = (0..span.div_ceil(seg)).map(|k| lo + k * seg).collect();
    let parts: Vec<FactorSieve> = starts
        .par_iter()
        .map(|&s| sieve_segment(s, (s + seg - 1).min(hi), &base))
        .collect();
    let mut out = FactorSieve {
        lo,
        hi,
        spf: Vec::with_capacity(span as usize),
        big_omega: Vec::with_capacity(span as usize),
        omega: Vec::with_capacity(span as usize),
    };
    for p in parts {
        out.spf.extend_from_slice(&p.spf);
        out.big_omega.extend_from_slice(&p.big_omega);
        out.omega.extend_from_slice(&p.omega);
    }
    Ok(out)
}

/// Sieve one segment. `base` must contain every prime up to `sqrt(hi)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u32]) -> FactorSieve {
    let len = (hi - lo + 1) as usize;
    let mut rest: Vec<u32> = (lo..=hi).map(|n| n as u32).collect();
    let mut spf = vec![0u32; len];
    let mut big_omega = vec![0u8; len];
    let mut omega = vec![0u8; len];
    for &p in base {
        let p64 = p as u64;
        if p64 * p64 > hi {
            break;
        }
        let mut m = lo.div_ceil(p64) * p64;
        while m <= hi {
            let i = (m - lo) as usize;
            if spf[i] == 0 {
                spf[i] = p;
            }
            omega[i] += 1;
            while rest[i] % p == 0 {
                rest[i] /= p;
                big_omega[i] += 1;
            }
            m += p64;
        }
    }
    for i in 0..len {
        if rest[i] > 1 {
            if spf[i] == 0 {
                spf[i] = rest[i];
            }
            big_omega[i] += 1;
            omega[i] += 1;
        }
    }
    FactorSieve {
        lo,
        hi,
        spf,
        big_omega,
        omega,
    }
}

/// Consecutive sieved segments covering `[lo, hi]`, built lazily so the full
/// range is never resident.
pub struct Segments {
    next: u64,
    hi: u64,
    seg: u64,
    base: Vec<u32>,
}

impl Iterator for Segments {
    type Item = FactorSieve;

    fn next(&mut self) -> Option<FactorSieve> {
        if self.next > self.hi {
            return None;
        }
        let lo = self.next;
        let hi = (lo + self.seg - 1).min(self.hi);
        self.next = hi + 1;
        Some(sieve_segment(lo, hi, &self.base))
    }
}

pub fn segments(lo: u64, hi: u64, segment_len: u64) -> Result<Segments> {
    check_range(lo, hi)?;
    Ok(Segments {
        next: lo,
        hi,
        seg: segment_len.max(1),
        base: small_primes(isqrt(hi)),
    })
}

impl FactorSieve {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.lo && n <= self.hi
    }

    fn idx(&self, n: u64) -> usize {
        assert!(self.contains(n), "{n} outside sieve range [{}, {}]", self.lo, self.hi);
        (n - self.lo) as usize
    }

    pub fn spf(&self, n: u64) -> u64 {
        self.spf[self.idx(n)] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == n
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.spf
            .iter()
            .enumerate()
            .filter(move |&(i, &s)| s as u64 == self.lo + i as u64)
            .map(|(_, &s)| s as u64)
    }

    pub fn big_omega(&self, n: u64) -> u32 {
        self.big_omega[self.idx(n)] as u32
    }

    pub fn small_omega(&self, n: u64) -> u32 {
        self.omega[self.idx(n)] as u32
    }

    pub fn mobius(&self, n: u64) -> i32 {
        let i = self.idx(n);
        if self.big_omega[i] != self.omega[i] {
            0
        } else if self.omega[i] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn mangoldt(&self, n: u64) -> f64 {
        let i = self.idx(n);
        if self.omega[i] == 1 {
            (self.spf[i] as f64).ln()
        } else {
            0.0
        }
    }

    /// Prime factorization as `(p, k)` pairs. Cofactors above the sieve's
    /// range are finished by trial division from the smallest prime factor.
    pub fn factorize(&self, n: u64) -> Vec<(u64, u32)> {
        let p = self.spf(n);
        let mut out = Vec::new();
        let mut m = n;
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        out.push((p, k));
        if m > 1 {
            if self.contains(m) {
                out.extend(self.factorize(m));
            } else {
                out.extend(trial_factor(m, p + 1));
            }
        }
        out
    }
}

pub(crate) fn trial_factor(mut n: u64, from: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = from.max(2);
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
