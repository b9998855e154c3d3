//! Command-line front end.
//!
//! Every subcommand prints its result and writes the same bytes to an
//! artifact under `output_dir`. Exit codes: 0 success, 1 a check failed,
//! 2 usage, configuration or domain error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::{parse_grid, parse_scale, Format, RunConfig, THEOREM_GAMMA_MIN};
use crate::error::{Error, Result};
use crate::exp_sums::{
    apply_word, lattice_count_inclusive, lattice_count_oracle, psi_truncation_check, trilinear_sum_check,
    uniform_samples, ExponentPair, C22, C24, C25,
};
use crate::params::{
    check_admissible, exponent_budget_s0, exponent_budget_type_i, exponent_budget_type_ii,
    lower_bound_bracket, make_params, Method,
};
use crate::partial_products::{exhaustive_certify, window_inside_analytic, WindowConstants};
use crate::ps_counts::{count_p7, remainders, PsInstance};
use crate::sieve_functions::{default_table, eval_F, eval_f};
use crate::suite::{run_suite, Scale, FINAL_CONSTANT};

pub const CSV_HEADER: &str = concat!("# ps-sieve-lab v", env!("CARGO_PKG_VERSION"), ", schema 1");

#[derive(Parser, Debug)]
#[command(name = "ps-sieve-lab", version, about = "Numerical checks for almost-primes [p^(1/gamma)]")]
struct Cli {
    /// Config file; overrides PS_SIEVE_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Tensor,
    Mc,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Final lower-bound bracket with its constraints.
    Bracket {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value = "tensor")]
        method: MethodArg,
        /// Monte Carlo sample count.
        #[arg(long, value_parser = parse_scale)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Admissibility and exponent budgets over a gamma grid.
    Admissible {
        /// lo:hi:count or a comma list.
        #[arg(long)]
        gamma_grid: Option<String>,
    },
    /// Linear sieve functions F and f.
    Sievefn {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
    /// Exponent pair from a word in A and B applied to (0, 1).
    Pair {
        #[arg(long)]
        word: String,
    },
    /// Lattice-point count against its bound.
    Lemma24 {
        #[arg(long = "J")]
        j: u64,
        #[arg(long = "L")]
        l: u64,
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.99)]
        gamma: f64,
        /// Count with non-strict inequality.
        #[arg(long)]
        inclusive: bool,
    },
    /// Trilinear exponential sum against its bound.
    Lemma25 {
        #[arg(long = "H")]
        h: u64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "M")]
        m: u64,
        #[arg(long = "X")]
        x: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long = "gamma-e", default_value_t = 1.0)]
        gamma_e: f64,
    },
    /// Truncated Fourier expansion of the sawtooth.
    Psi {
        /// Truncation lengths, comma separated.
        #[arg(long = "H", value_delimiter = ',', default_values_t = [10u64, 100, 1000])]
        h: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Count primes p <= x^gamma with few prime factors in [p^(1/gamma)].
    Count {
        #[arg(long, value_parser = parse_scale)]
        x: u64,
        #[arg(long)]
        gamma: f64,
        /// Drop a with a prime factor below x^(1/17.41).
        #[arg(long)]
        sifted: bool,
        #[arg(long, default_value_t = 7)]
        omega_max: u32,
    },
    /// Remainders of #A_d against pi(x^gamma)/d for d <= x^xi.
    Remainders {
        #[arg(long, value_parser = parse_scale)]
        x: u64,
        #[arg(long)]
        gamma: f64,
    },
    /// Exhaustive partial-product certificate and window slacks.
    CertifyPartition {
        #[arg(long, default_value_t = 5e-3)]
        step: f64,
        #[arg(long, default_value_t = 0.989)]
        gamma: f64,
        /// eta for the analytic window; 0 is the limit that fixes the window.
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long, default_value_t = 0.01)]
        eta_s: f64,
    },
    /// Run the acceptance suite and write a report.
    Reproduce {
        #[arg(long)]
        quick: bool,
    },
}

struct Output {
    stem: String,
    native: Format,
    json: Value,
    csv: Option<String>,
    pass: bool,
}

impl Output {
    fn json(stem: String, json: Value, pass: bool) -> Self {
        Output { stem, native: Format::Json, json, csv: None, pass }
    }
}

fn csv(columns: &str, rows: &[String]) -> String {
    let mut s = format!("{CSV_HEADER}\n{columns}\n");
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

fn theorem_warning(gamma: f64) {
    if gamma <= THEOREM_GAMMA_MIN {
        eprintln!("warning: gamma={gamma} is outside (0.989, 1); exploration mode");
    }
}

fn bracket(cfg: &RunConfig, gamma: f64, eta: Option<f64>, epsilon: Option<f64>, method: MethodArg, samples: Option<u64>, seed: Option<u64>) -> Result<Output> {
    theorem_warning(gamma);
    let p = make_params(gamma, eta.unwrap_or(cfg.eta), epsilon.unwrap_or(cfg.epsilon))?;
    let m = match method {
        MethodArg::Tensor => Method::TensorGauss,
        MethodArg::Mc => Method::MonteCarlo { samples: samples.unwrap_or(cfg.mc_samples), seed: seed.unwrap_or(cfg.seed) },
    };
    let r = lower_bound_bracket(&p, m)?;
    let pass = r.bracket >= FINAL_CONSTANT;
    let constraints: Vec<Value> = r
        .constraints
        .iter()
        .map(|c| json!({ "name": c.name, "eq": c.anchor, "slack": c.slack, "pass": c.pass }))
        .collect();
    let mut json = json!({
        "eq": "X-compu-num",
        "gamma": p.gamma,
        "eta": p.eta,
        "epsilon": p.epsilon,
        "xi": p.xi,
        "u": p.u,
        "lambda": p.lambda_w,
        "I1": r.i1,
        "I7": r.i7.value,
        "I7_error": r.i7.error,
        "bracket": r.bracket,
        "bracket_scaled": r.bracket_scaled,
        "threshold": FINAL_CONSTANT,
        "pass": pass,
        "constraints": constraints,
    });
    let stem = match m {
        Method::TensorGauss => {
            json["method"] = json!("tensor");
            format!("bracket-g{gamma}-tensor")
        }
        Method::MonteCarlo { samples, seed } => {
            json["method"] = json!("mc");
            json["samples"] = json!(samples);
            json["seed"] = json!(seed);
            format!("bracket-g{gamma}-mc{samples}-s{seed}")
        }
    };
    Ok(Output::json(stem, json, pass))
}

fn admissible(cfg: &RunConfig, grid: Option<String>) -> Result<Output> {
    let gammas = match grid {
        Some(g) => parse_grid(&g).map_err(Error::Parse)?,
        None => cfg.gamma_grid.clone(),
    };
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut pass = true;
    for g in gammas {
        theorem_warning(g);
        let p = make_params(g, cfg.eta, cfg.epsilon)?;
        let c = check_admissible(&p);
        let worst = c.constraints.iter().min_by(|a, b| a.slack.total_cmp(&b.slack)).expect("constraints");
        let b2 = exponent_budget_type_ii(&p);
        let b1 = exponent_budget_type_i(&p);
        let b0 = exponent_budget_s0(&p);
        let ok = c.all_pass() && b2.pass && b1.pass && b0.pass;
        pass &= ok;
        rows.push(format!(
            "{g},{},{},{},{},{},\"{}\",{},{},{}",
            p.xi,
            p.u,
            p.lambda_w,
            c.all_pass(),
            worst.slack,
            worst.name,
            b2.pass,
            b1.pass,
            b0.pass
        ));
        records.push(json!({
            "gamma": g,
            "xi": p.xi,
            "admissible": c.all_pass(),
            "min_slack": worst.slack,
            "min_constraint": worst.name,
            "budgets": { "type_ii": b2.pass, "type_i": b1.pass, "s0": b0.pass },
        }));
    }
    Ok(Output {
        stem: "admissible".into(),
        native: Format::Csv,
        json: json!({ "eq": "level-def", "rows": records }),
        csv: Some(csv("gamma,xi,u,lambda,admissible,min_slack,min_constraint,type_ii,type_i,s0", &rows)),
        pass,
    })
}

fn sievefn(s: f64, h: f64) -> Result<Output> {
    let t = default_table();
    let residual = if s >= 2.0 + h && s <= t.s_max() - h {
        let (a, b) = t.dde_residual(s, h)?;
        json!({ "F": a, "f": b })
    } else {
        Value::Null
    };
    let json = json!({ "eq": "diff-eq", "s": s, "F": eval_F(s)?, "f": eval_f(s)?, "h": h, "residual": residual });
    Ok(Output::json(format!("sievefn-s{s}"), json, true))
}

fn pair(word: &str) -> Result<Output> {
    let p = apply_word(word, &ExponentPair::trivial())?;
    let json = json!({
        "eq": "expo-pair-gernal",
        "word": word,
        "kappa": p.kappa.to_string(),
        "ell": p.ell.to_string(),
        "valid": p.is_valid(),
    });
    Ok(Output::json(format!("pair-{word}"), json, p.is_valid()))
}

fn lemma24(j: u64, l: u64, d: u64, delta: f64, gamma: f64, inclusive: bool) -> Result<Output> {
    let r = if inclusive {
        lattice_count_inclusive(j, l, d, delta, gamma)?
    } else {
        lattice_count_oracle(j, l, d, delta, gamma)?
    };
    let pass = r.ratio <= C24;
    let json = json!({
        "eq": "latticepoints",
        "inputs": { "J": j, "L": l, "D": d, "delta": delta, "gamma": gamma, "inclusive": inclusive },
        "value": r.count,
        "bound": r.bound,
        "ratio": r.ratio,
        "constant": C24,
        "pass": pass,
    });
    Ok(Output::json(format!("lemma24-{j}-{l}-{d}-{delta}"), json, pass))
}

fn lemma25(h: u64, n: u64, m: u64, x: f64, alpha: Option<f64>, beta: f64, gamma_e: f64) -> Result<Output> {
    let alpha = alpha.unwrap_or(1.0 / 0.99);
    let r = trilinear_sum_check(h, n, m, x, alpha, beta, gamma_e)?;
    let pass = r.ratio <= C25;
    let json = json!({
        "eq": "Robert-Sargos-lemma",
        "inputs": { "H": h, "N": n, "M": m, "X": x, "alpha": alpha, "beta": beta, "gamma": gamma_e },
        "value": r.s,
        "bound": r.bound,
        "ratio": r.ratio,
        "constant": C25,
        "pass": pass,
    });
    Ok(Output::json(format!("lemma25-{h}-{n}-{m}-{x}"), json, pass))
}

fn psi_cmd(cfg: &RunConfig, hs: &[u64], samples: usize, seed: Option<u64>) -> Result<Output> {
    let seed = seed.unwrap_or(cfg.seed);
    let ts = uniform_samples(samples, seed);
    let mut rows = Vec::new();
    let mut pass = true;
    for &h in hs {
        let r = psi_truncation_check(&ts, h)?;
        pass &= r.max_ratio <= C22;
        rows.push(json!({ "H": h, "value": r.max_ratio, "worst_t": r.worst_t, "checked": r.checked, "skipped": r.skipped }));
    }
    let json = json!({ "eq": "psi-expansion", "samples": samples, "seed": seed, "constant": C22, "rows": rows, "pass": pass });
    Ok(Output::json(format!("psi-n{samples}-s{seed}"), json, pass))
}

fn instance(cfg: &RunConfig, x: u64, gamma: f64) -> Result<PsInstance> {
    theorem_warning(gamma);
    PsInstance::with_params(x, make_params(gamma, cfg.eta, cfg.epsilon)?)
}

fn count(cfg: &RunConfig, x: u64, gamma: f64, sifted: bool, omega_max: u32) -> Result<Output> {
    let inst = instance(cfg, x, gamma)?;
    let r = count_p7(&inst, omega_max, sifted)?;
    let row = format!("{gamma},{x},{omega_max},{sifted},{},{},{}", r.count, r.benchmark, r.ratio);
    Ok(Output {
        stem: format!("count-x{x}-g{gamma}-w{omega_max}{}", if sifted { "-sifted" } else { "" }),
        native: Format::Csv,
        json: json!({ "eq": "Thm-ineq", "gamma": gamma, "x": x, "result": r }),
        csv: Some(csv("gamma,x,omega_max,sifted,count,benchmark,ratio", &[row])),
        pass: r.count > 0,
    })
}

fn remainders_cmd(cfg: &RunConfig, x: u64, gamma: f64) -> Result<Output> {
    let inst = instance(cfg, x, gamma)?;
    let ds: Vec<u64> = (1..=inst.d_max).collect();
    let t = remainders(&inst, &ds)?;
    let rows: Vec<String> =
        t.records.iter().map(|r| format!("{},{},{},{}", r.d, r.card_ad, r.main_term, r.r_d)).collect();
    Ok(Output {
        stem: format!("remainders-x{x}-g{gamma}"),
        native: Format::Csv,
        json: json!({ "eq": "A_d-asymp", "gamma": gamma, "x": x, "table": t }),
        csv: Some(csv("d,card,main,R_d", &rows)),
        pass: true,
    })
}

fn certify(step: f64, gamma: f64, eta: f64, eta_s: f64) -> Result<Output> {
    let w = WindowConstants::default();
    let r = exhaustive_certify(step, eta_s, &w)?;
    let s = window_inside_analytic(&make_params(gamma, eta, 0.0)?, &w)?;
    let pass = r.counterexample_count == 0 && s.pass;
    let json = json!({
        "eq": "omega=8-error",
        "step": step,
        "eta_s": eta_s,
        "gamma": gamma,
        "eta": eta,
        "points_checked": r.points_checked,
        "counterexamples": r.counterexample_count,
        "counterexample_points": r.counterexamples,
        "min_margin": r.min_margin,
        "slacks": { "lower": s.lower_slack, "upper": s.upper_slack },
        "pass": pass,
    });
    Ok(Output::json(format!("certify-partition-{step}-g{gamma}"), json, pass))
}

fn reproduce(cfg: &RunConfig, quick: bool) -> Result<Output> {
    let scale = if quick { Scale::Quick } else { Scale::Full };
    let report = run_suite(scale, |r| eprintln!("{}", r.line()));
    let dir = cfg.output_dir.join(if quick { "reproduce-quick" } else { "reproduce-full" });
    std::fs::create_dir_all(&dir)?;
    for r in &report.results {
        std::fs::write(dir.join(format!("criterion-{:02}.json", r.id)), serde_json::to_string_pretty(r)? + "\n")?;
    }
    std::fs::write(dir.join("summary.txt"), report.summary())?;
    let mut rows = Vec::new();
    for r in &report.results {
        rows.push(format!("{},\"{}\",{}", r.id, r.name, r.pass));
    }
    let pass = report.all_pass();
    Ok(Output {
        stem: format!("reproduce-{}", if quick { "quick" } else { "full" }),
        native: Format::Json,
        json: json!({
            "eq": "Thm-ineq",
            "scale": scale,
            "pass": pass,
            "criteria": report.results.iter().map(|r| json!({ "id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail })).collect::<Vec<_>>(),
        }),
        csv: Some(csv("id,name,pass", &rows)),
        pass,
    })
}

fn render(out: &Output, pref: Option<Format>) -> Result<(String, &'static str)> {
    match (pref.unwrap_or(out.native), &out.csv) {
        (Format::Csv, Some(c)) => Ok((c.clone(), "csv")),
        _ => Ok((serde_json::to_string_pretty(&out.json)? + "\n", "json")),
    }
}

fn write_artifact(dir: &Path, stem: &str, ext: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{stem}.{ext}"));
    std::fs::write(&path, body)?;
    Ok(path)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parameter(_) | Error::Parse(_) | Error::Config { .. } | Error::Resource { .. } => 2,
        _ => 1,
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::from_env()?,
    };
    if let Some(d) = cli.output_dir {
        cfg.output_dir = d;
    }
    if let Some(f) = cli.format {
        cfg.format = Some(f);
    }
    if let Some(w) = cli.workers {
        cfg.worker_count = w.max(1);
    }
    // the global pool can only be built once per process; later calls keep it
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.worker_count).build_global();
    let out = match cli.cmd {
        Cmd::Bracket { gamma, eta, epsilon, method, samples, seed } => {
            bracket(&cfg, gamma, eta, epsilon, method, samples, seed)?
        }
        Cmd::Admissible { gamma_grid } => admissible(&cfg, gamma_grid)?,
        Cmd::Sievefn { s, h } => sievefn(s, h)?,
        Cmd::Pair { word } => pair(&word)?,
        Cmd::Lemma24 { j, l, d, delta, gamma, inclusive } => lemma24(j, l, d, delta, gamma, inclusive)?,
        Cmd::Lemma25 { h, n, m, x, alpha, beta, gamma_e } => lemma25(h, n, m, x, alpha, beta, gamma_e)?,
        Cmd::Psi { h, samples, seed } => psi_cmd(&cfg, &h, samples, seed)?,
        Cmd::Count { x, gamma, sifted, omega_max } => count(&cfg, x, gamma, sifted, omega_max)?,
        Cmd::Remainders { x, gamma } => remainders_cmd(&cfg, x, gamma)?,
        Cmd::CertifyPartition { step, gamma, eta, eta_s } => certify(step, gamma, eta, eta_s)?,
        Cmd::Reproduce { quick } => reproduce(&cfg, quick)?,
    };
    let (body, ext) = render(&out, cfg.format)?;
    write_artifact(&cfg.output_dir, &out.stem, ext, &body)?;
    print!("{body}");
    Ok(out.pass)
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_in(dir: &Path, args: &[&str]) -> i32 {
        let mut v = vec!["ps-sieve-lab", "--output-dir", dir.to_str().unwrap()];
        v.extend_from_slice(args);
        run(v)
    }

    fn read(dir: &Path, name: &str) -> String {
        std::fs::read_to_string(dir.join(name)).unwrap()
    }

    #[test]
    fn pair_word() {
        let d = tempfile::tempdir().unwrap();
        assert_eq!(run_in(d.path(), &["pair", "--word", "BA3B"]), 0);
        let v: Value = serde_json::from_str(&read(d.path(), "pair-BA3B.json")).unwrap();
        assert_eq!(v["kappa"], "11/30");
        assert_eq!(v["ell"], "8/15");
        assert_eq!(v["eq"], "expo-pair-gernal");
    }

    #[test]
    fn usage_errors() {
        let d = tempfile::tempdir().unwrap();
        assert_eq!(run_in(d.path(), &["pair", "--wrod", "B"]), 2);
        assert_eq!(run_in(d.path(), &["frobnicate"]), 2);
        assert_eq!(run_in(d.path(), &["pair", "--word", "BXA"]), 2);
        assert_eq!(run_in(d.path(), &["--help"]), 0);
    }

    #[test]
    fn config_error_names_line() {
        let d = tempfile::tempdir().unwrap();
        let cfg = d.path().join("run.cfg");
        std::fs::write(&cfg, "eta = 1e-6\nwat\n").unwrap();
        assert_eq!(run_in(d.path(), &["--config", cfg.to_str().unwrap(), "pair", "--word", "B"]), 2);
        match RunConfig::load(&cfg) {
            Err(Error::Config { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn count_csv_has_versioned_header() {
        let d = tempfile::tempdir().unwrap();
        assert_eq!(run_in(d.path(), &["count", "--x", "1e5", "--gamma", "0.99"]), 0);
        let s = read(d.path(), "count-x100000-g0.99-w7.csv");
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("gamma,x,omega_max,sifted,count,benchmark,ratio"));
        assert!(lines.next().unwrap().starts_with("0.99,100000,7,false,"));
    }

    #[test]
    fn remainders_and_sievefn() {
        let d = tempfile::tempdir().unwrap();
        assert_eq!(run_in(d.path(), &["remainders", "--x", "1e6", "--gamma", "0.99"]), 0);
        let s = read(d.path(), "remainders-x1000000-g0.99.csv");
        assert!(s.lines().nth(2).unwrap().starts_with("1,"));
        assert!(s.lines().nth(2).unwrap().ends_with(",0"));
        assert_eq!(run_in(d.path(), &["sievefn", "--s", "3"]), 0);
        let v: Value = serde_json::from_str(&read(d.path(), "sievefn-s3.json")).unwrap();
        assert!((v["f"].as_f64().unwrap() - 0.8230302).abs() < 1e-6);
    }

    #[test]
    fn lemma_commands() {
        let d = tempfile::tempdir().unwrap();
        let a = ["lemma24", "--J", "8", "--L", "8", "--D", "8", "--delta", "1e-6", "--gamma", "0.99"];
        assert_eq!(run_in(d.path(), &a), 0);
        let b = ["lemma25", "--H", "16", "--N", "16", "--M", "64", "--X", "32"];
        assert_eq!(run_in(d.path(), &b), 0);
        assert_eq!(run_in(d.path(), &["psi", "--H", "10,100", "--samples", "2000"]), 0);
        let c = ["lemma25", "--H", "16", "--N", "16", "--M", "64", "--X", "32", "--alpha", "1"];
        assert_eq!(run_in(d.path(), &c), 2);
    }

    #[test]
    fn exploration_gamma_is_a_parameter_error() {
        let d = tempfile::tempdir().unwrap();
        assert_eq!(run_in(d.path(), &["bracket", "--gamma", "0.9"]), 2);
    }
}
