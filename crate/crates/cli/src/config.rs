use std::fmt;
use std::path::PathBuf;

use graftlab::hyperbolic::RELATOR_TOLERANCE;
use graftlab::kleinian::{DEFAULT_DEPTH, DEFAULT_EPS};
use graftlab::word::DEFAULT_WORD_CAP;

/// Run settings, read from a `key=value` file and overridden by flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub relator_tolerance: f64,
    pub dedup_tolerance: f64,
    pub crossing_tolerance: f64,
    pub word_cap: usize,
    pub eps: f64,
    pub depth: usize,
    pub bq_depth: u32,
    /// `0` lets the runtime choose.
    pub threads: usize,
    pub output_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            relator_tolerance: RELATOR_TOLERANCE,
            dedup_tolerance: 1e-3,
            crossing_tolerance: 1e-10,
            word_cap: DEFAULT_WORD_CAP,
            eps: DEFAULT_EPS,
            depth: DEFAULT_DEPTH,
            bq_depth: 8,
            threads: 0,
            output_dir: PathBuf::from("."),
        }
    }
}

pub const KEYS: [&str; 9] = [
    "relator_tolerance",
    "dedup_tolerance",
    "crossing_tolerance",
    "word_cap",
    "eps",
    "depth",
    "bq_depth",
    "threads",
    "output_dir",
];

fn positive(key: &str, value: &str) -> Result<f64, String> {
    let v: f64 = value.parse().map_err(|_| format!("{key}: `{value}` is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{key} must be positive, got {value}"))
    }
}

fn at_least<T: std::str::FromStr + PartialOrd + fmt::Display>(key: &str, value: &str, min: T) -> Result<T, String> {
    let v: T = value.parse().map_err(|_| format!("{key}: `{value}` is not an integer"))?;
    if v >= min {
        Ok(v)
    } else {
        Err(format!("{key} must be at least {min}, got {value}"))
    }
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        match key.trim() {
            "relator_tolerance" => self.relator_tolerance = positive(key, value)?,
            "dedup_tolerance" => self.dedup_tolerance = positive(key, value)?,
            "crossing_tolerance" => self.crossing_tolerance = positive(key, value)?,
            "word_cap" => self.word_cap = at_least(key, value, 1)?,
            "eps" => self.eps = positive(key, value)?,
            "depth" => self.depth = at_least(key, value, 1)?,
            "bq_depth" => self.bq_depth = at_least(key, value, 0)?,
            "threads" => self.threads = at_least(key, value, 0)?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            other => return Err(format!("unknown config key `{other}` (known: {})", KEYS.join(", "))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value, got `{line}`", n + 1))?;
            self.set(key, value).map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relator_tolerance={:e}", self.relator_tolerance)?;
        writeln!(f, "dedup_tolerance={:e}", self.dedup_tolerance)?;
        writeln!(f, "crossing_tolerance={:e}", self.crossing_tolerance)?;
        writeln!(f, "word_cap={}", self.word_cap)?;
        writeln!(f, "eps={:e}", self.eps)?;
        writeln!(f, "depth={}", self.depth)?;
        writeln!(f, "bq_depth={}", self.bq_depth)?;
        writeln!(f, "threads={}", self.threads)?;
        writeln!(f, "output_dir={}", self.output_dir.display())
    }
}
