//! Acceptance criteria at full scale, one test per criterion.
//!
//! Each test writes a single PASS/FAIL line straight to the stdout handle,
//! which the test harness does not capture.

use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use ps_sieve_lab::cli;
use ps_sieve_lab::suite::{self, CriterionResult, Scale, BRACKET_GAMMAS};

fn report(r: &CriterionResult, elapsed: Duration) {
    let line = format!("{}  [{:.1?}]\n", r.line(), elapsed);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn check(id: u8, limit: Option<Duration>) -> CriterionResult {
    let t = Instant::now();
    let r = suite::run_criterion(id, Scale::Full).unwrap_or_else(|e| panic!("criterion {id}: {e}"));
    let elapsed = t.elapsed();
    report(&r, elapsed);
    assert!(r.pass, "{}", r.line());
    if let Some(limit) = limit {
        assert!(elapsed <= limit, "criterion {id} took {elapsed:?}, limit {limit:?}");
    }
    r
}

#[test]
fn c01_final_constant() {
    for g in BRACKET_GAMMAS {
        let t = Instant::now();
        let r = suite::final_constant(Scale::Full, &[g]).unwrap();
        let elapsed = t.elapsed();
        report(&r, elapsed);
        assert!(r.pass, "gamma {g}: {}", r.line());
        assert!(elapsed <= Duration::from_secs(120), "gamma {g} took {elapsed:?}");
    }
}

#[test]
fn c02_exponent_pair() {
    check(2, None);
}

#[test]
fn c03_heath_brown_identity() {
    check(3, None);
}

#[test]
fn c04_sieve_dde() {
    check(4, None);
}

#[test]
fn c05_admissibility() {
    check(5, None);
}

#[test]
fn c06_exponent_budgets() {
    check(6, None);
}

#[test]
fn c07_partition_certificate() {
    let t = Instant::now();
    let r = ps_sieve_lab::partial_products::exhaustive_certify(
        5e-3,
        0.01,
        &ps_sieve_lab::partial_products::WindowConstants::default(),
    )
    .unwrap();
    assert!(t.elapsed() <= Duration::from_secs(300));
    assert!(r.points_checked >= 100_000);
    check(7, None);
}

#[test]
fn c08_counting_consistency() {
    check(8, Some(Duration::from_secs(600)));
}

#[test]
fn c09_lemma_spot_checks() {
    check(9, None);
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = walk(dir)
        .into_iter()
        .map(|p| (p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn c10_determinism() {
    let t = Instant::now();
    let r = suite::determinism().unwrap();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let code = cli::run(["ps-sieve-lab", "--output-dir", d.path().to_str().unwrap(), "reproduce", "--quick"]);
        assert_eq!(code, 0);
    }
    let (fa, fb) = (files(a.path()), files(b.path()));
    assert!(fa.len() >= 12, "expected per-criterion artifacts, got {}", fa.len());
    let identical = fa == fb;
    let r = CriterionResult {
        pass: r.pass && identical,
        detail: format!("{}; reproduce --quick twice: {} artifacts identical: {identical}", r.detail, fa.len()),
        ..r
    };
    report(&r, t.elapsed());
    assert!(r.pass, "{}", r.line());
}
