//! Run configuration: flat `key = value` files, overridden by flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use phasespace::io::Format;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub dx: f64,
    pub r_max: usize,
    /// Replaces the default tolerance of every numerical check.
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { n: 64, dx: 0.25, r_max: 8, tol: None, out: None, format: Format::Json, seed: 0 }
    }
}

/// Flag values; `None` leaves the file or default value in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub dx: Option<f64>,
    pub r_max: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// later keys win.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", lineno + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_field<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Usage(format!("config key {key}: cannot parse '{v}'")))
}

impl RunConfig {
    pub fn from_kv(map: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let mut c = RunConfig::default();
        for (k, v) in map {
            match k.as_str() {
                "n" => c.n = parse_field(k, v)?,
                "dx" => c.dx = parse_field(k, v)?,
                "r_max" => c.r_max = parse_field(k, v)?,
                "tol" => c.tol = Some(parse_field(k, v)?),
                "out" => c.out = Some(PathBuf::from(v)),
                "format" => c.format = v.parse().map_err(CliError::Usage)?,
                "seed" => c.seed = parse_field(k, v)?,
                other => return Err(CliError::Usage(format!("unknown config key '{other}'"))),
            }
        }
        Ok(c)
    }

    pub fn load(path: Option<&Path>, flags: &Overrides) -> Result<Self, CliError> {
        let mut c = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                Self::from_kv(&parse_kv(&text)?)?
            }
            None => RunConfig::default(),
        };
        if let Some(v) = flags.n {
            c.n = v;
        }
        if let Some(v) = flags.dx {
            c.dx = v;
        }
        if let Some(v) = flags.r_max {
            c.r_max = v;
        }
        if flags.tol.is_some() {
            c.tol = flags.tol;
        }
        if flags.out.is_some() {
            c.out = flags.out.clone();
        }
        if let Some(v) = flags.format {
            c.format = v;
        }
        if let Some(v) = flags.seed {
            c.seed = v;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 || self.n % 2 != 0 {
            return Err(CliError::Usage(format!("n must be even and at least 2, got {}", self.n)));
        }
        if !(self.dx > 0.0 && self.dx.is_finite()) {
            return Err(CliError::Usage(format!("dx must be positive, got {}", self.dx)));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(())
    }

    /// `default`, or the override when one is set.
    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}
