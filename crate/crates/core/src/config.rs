//! Run configuration: flat `key = value` lines with `#` comments.
//!
//! ```text
//! gamma_grid = 0.9891:0.9999:100   # lo:hi:count, or a comma list
//! eta = 1e-6
//! x_scales = 1e6, 1e7
//! output_dir = out
//! format = json
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{DEFAULT_EPSILON, DEFAULT_ETA, GAMMA_MIN};

pub const CONFIG_ENV: &str = "PS_SIEVE_CONFIG";

/// Lower end of the theorem range `0.989 < γ < 1`.
pub const THEOREM_GAMMA_MIN: f64 = 0.989;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}, expected csv or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub gamma_grid: Vec<f64>,
    pub eta: f64,
    pub epsilon: f64,
    pub x_scales: Vec<u64>,
    pub output_dir: PathBuf,
    /// Overrides each command's native output format when set.
    pub format: Option<Format>,
    pub worker_count: usize,
    pub seed: u64,
    pub mc_samples: u64,
    pub segment_len: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            gamma_grid: vec![0.989, 0.992, 0.995, 0.999],
            eta: DEFAULT_ETA,
            epsilon: DEFAULT_EPSILON,
            x_scales: vec![1_000_000],
            output_dir: PathBuf::from("out"),
            format: None,
            worker_count: 1,
            seed: crate::params::MC_SEED,
            mc_samples: 10_000_000,
            segment_len: 1 << 20,
        }
    }
}

/// `lo:hi:count` (inclusive, evenly spaced) or a comma-separated list.
pub fn parse_grid(s: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let lo: f64 = lo.parse().map_err(|_| format!("bad grid start {lo:?}"))?;
            let hi: f64 = hi.parse().map_err(|_| format!("bad grid end {hi:?}"))?;
            let n: usize = n.parse().map_err(|_| format!("bad grid count {n:?}"))?;
            if n == 0 || !(lo <= hi) {
                return Err(format!("empty grid {s:?}"));
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
        }
        [_] => s
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad number {v:?}")))
            .collect(),
        _ => Err(format!("grid {s:?} is neither lo:hi:count nor a list")),
    }
}

/// An integer that may be written in floating notation, such as `1e6`.
pub fn parse_scale(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("bad integer {s:?}"))?;
    if v >= 1.0 && v <= 1e18 && v.fract() == 0.0 {
        Ok(v as u64)
    } else {
        Err(format!("{s:?} is not a positive integer"))
    }
}

fn parse_u64(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    match s.strip_prefix("0x") {
        Some(h) => u64::from_str_radix(h, 16).map_err(|_| format!("bad hex {s:?}")),
        None => parse_scale(s),
    }
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    s.parse().map_err(|_| format!("bad number {s:?}"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config { line: i + 1, message };
            let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let r: std::result::Result<(), String> = match key {
                "gamma_grid" => parse_grid(value).map(|v| cfg.gamma_grid = v),
                "eta" => parse_f64(value).map(|v| cfg.eta = v),
                "epsilon" => parse_f64(value).map(|v| cfg.epsilon = v),
                "x_scales" => value
                    .split(',')
                    .map(parse_scale)
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map(|v| cfg.x_scales = v),
                "output_dir" => {
                    cfg.output_dir = PathBuf::from(value);
                    Ok(())
                }
                "format" => value.parse().map(|v| cfg.format = Some(v)),
                "worker_count" => parse_u64(value).map(|v| cfg.worker_count = v as usize),
                "seed" => parse_u64(value).map(|v| cfg.seed = v),
                "mc_samples" => parse_u64(value).map(|v| cfg.mc_samples = v),
                "segment_len" => parse_u64(value).map(|v| cfg.segment_len = v),
                _ => Err(format!("unknown key {key:?}")),
            };
            r.map_err(err)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The file named by `PS_SIEVE_CONFIG`, or defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::load(Path::new(&p)),
            None => Ok(Self::default()),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |message: String| Err(Error::Config { line: 0, message });
        if self.gamma_grid.is_empty() {
            return bad("gamma_grid is empty".into());
        }
        if let Some(g) = self.gamma_grid.iter().find(|&&g| !(g > GAMMA_MIN && g < 1.0)) {
            return bad(format!("gamma {g} outside (99/140, 1)"));
        }
        if !(0.0..=1e-3).contains(&self.eta) || !(0.0..=1e-3).contains(&self.epsilon) {
            return bad("eta and epsilon must lie in [0, 1e-3]".into());
        }
        if self.worker_count == 0 {
            return bad("worker_count must be positive".into());
        }
        if self.segment_len < 1024 {
            return bad("segment_len must be at least 1024".into());
        }
        Ok(())
    }

    /// Grid points outside the theorem range; allowed, but only for exploration.
    pub fn exploration_points(&self) -> Vec<f64> {
        self.gamma_grid.iter().copied().filter(|&g| g <= THEOREM_GAMMA_MIN).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let cfg = RunConfig::parse(
            "# defaults for a run\n\
             gamma_grid = 0.99:0.999:4\n\
             eta = 2e-6   # trailing comment\n\
             x_scales = 1e6, 2000000\n\
             output_dir = /tmp/x\n\
             format = csv\n\
             seed = 0x5EED\n",
        )
        .unwrap();
        assert_eq!(cfg.gamma_grid.len(), 4);
        assert!((cfg.gamma_grid[3] - 0.999).abs() < 1e-15);
        assert_eq!(cfg.eta, 2e-6);
        assert_eq!(cfg.x_scales, vec![1_000_000, 2_000_000]);
        assert_eq!(cfg.format, Some(Format::Csv));
        assert_eq!(cfg.seed, 0x5EED);
    }

    #[test]
    fn errors_name_the_line() {
        match RunConfig::parse("eta = 1e-6\n\nbogus = 3\n") {
            Err(Error::Config { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("bogus"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(RunConfig::parse("format = xml"), Err(Error::Config { line: 1, .. })));
        assert!(matches!(RunConfig::parse("no equals sign"), Err(Error::Config { line: 1, .. })));
        assert!(matches!(RunConfig::parse("gamma_grid = 0.5"), Err(Error::Config { .. })));
    }

    #[test]
    fn exploration_points_flagged() {
        let cfg = RunConfig::parse("gamma_grid = 0.95, 0.99").unwrap();
        assert_eq!(cfg.exploration_points(), vec![0.95]);
    }

    #[test]
    fn scales() {
        assert_eq!(parse_scale("1e7"), Ok(10_000_000));
        assert!(parse_scale("1.5").is_err());
        assert_eq!(parse_grid("0.99, 0.995").unwrap(), vec![0.99, 0.995]);
    }
}
