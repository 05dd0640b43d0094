//! Run configuration: flat key=value config file with command-line
//! overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown format '{other}' (csv or json)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub grid: Option<String>,
    pub n_schedule: Option<Vec<usize>>,
    pub seed: u64,
    extra: BTreeMap<String, String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol: None,
            out: None,
            format: OutputFormat::Csv,
            grid: None,
            n_schedule: None,
            seed: 42,
            extra: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    /// Parse a flat `key = value` file (# starts a comment). Recognized
    /// keys feed the typed fields; everything else lands in `extra`.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Config(format!("line {}: expected key=value", lineno + 1)));
            };
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "tol" => {
                self.tol = Some(
                    value.parse::<f64>().map_err(|_| Error::Config(format!("bad tol '{value}'")))?,
                )
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "grid" => self.grid = Some(value.to_string()),
            "n_schedule" => self.n_schedule = Some(parse_usize_list(value)?),
            "seed" => {
                self.seed =
                    value.parse::<u64>().map_err(|_| Error::Config(format!("bad seed '{value}'")))?
            }
            other => {
                self.extra.insert(other.to_string(), value.to_string());
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.extra.get(key).map(String::as_str)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        if let Some(ns) = &self.n_schedule {
            if ns.is_empty() {
                return Err(Error::Config("n_schedule must not be empty".into()));
            }
            if ns.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Config("n_schedule must be strictly increasing".into()));
            }
            if ns.iter().any(|&n| n == 0) {
                return Err(Error::Config("n_schedule entries must be >= 1".into()));
            }
        }
        Ok(())
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub fn n_schedule_or(&self, default: &[usize]) -> Vec<usize> {
        self.n_schedule.clone().unwrap_or_else(|| default.to_vec())
    }
}

pub(crate) fn parse_usize_list(value: &str) -> Result<Vec<usize>> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad list entry '{s}'")))
        })
        .collect()
}
