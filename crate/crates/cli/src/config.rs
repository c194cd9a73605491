//! Flat `key = value` configuration files with `#` comments.
//!
//! Keys match [`SimConfig`] field names, plus the experiment keys
//! `algorithms`, `seeds`, `base_seed`, `seed_count`, `out` and `formats`.
//! Precedence: command-line overrides, then file values, then defaults.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use camcover_core::{Priority, ReselectPolicy, SimConfig};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub json: bool,
}

impl Default for Formats {
    fn default() -> Self {
        Formats { csv: true, json: true }
    }
}

/// A base configuration crossed with algorithms and seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub config: SimConfig,
    pub algorithms: Vec<Priority>,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
    pub formats: Formats,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        let config = SimConfig::default();
        ExperimentSpec {
            algorithms: vec![config.priority],
            seeds: vec![config.seed],
            config,
            out_dir: PathBuf::from("out"),
            formats: Formats::default(),
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        if self.algorithms.is_empty() {
            return Err(invalid("algorithms", "at least one algorithm is required"));
        }
        if self.seeds.is_empty() {
            return Err(invalid("seeds", "at least one seed is required"));
        }
        let distinct: BTreeSet<_> = self.seeds.iter().collect();
        if distinct.len() != self.seeds.len() {
            return Err(invalid("seeds", "seeds must be distinct"));
        }
        let algos: BTreeSet<_> = self.algorithms.iter().map(|a| a.as_str()).collect();
        if algos.len() != self.algorithms.len() {
            return Err(invalid("algorithms", "algorithms must be distinct"));
        }
        if !self.formats.csv && !self.formats.json {
            return Err(invalid("formats", "at least one output format is required"));
        }
        Ok(())
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> CliError {
    CliError::InvalidValue {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| invalid(key, format!("cannot parse `{value}`")))
}

fn parse_opt<T: std::str::FromStr>(key: &str, value: &str) -> Result<Option<T>> {
    match value.trim() {
        "" | "none" | "auto" => Ok(None),
        v => parse_num(key, v).map(Some),
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        v => Err(invalid(key, format!("expected true or false, got `{v}`"))),
    }
}

/// `N..M` (inclusive) or a comma-separated list.
pub fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    let value = value.trim();
    if let Some((lo, hi)) = value.split_once("..") {
        let lo: u64 = parse_num("seeds", lo)?;
        let hi: u64 = parse_num("seeds", hi.trim_start_matches('='))?;
        if hi < lo {
            return Err(invalid("seeds", format!("empty range {value}")));
        }
        return Ok((lo..=hi).collect());
    }
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_num("seeds", s))
        .collect()
}

pub fn parse_algorithms(value: &str) -> Result<Vec<Priority>> {
    value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Priority>().map_err(|e| invalid("algorithms", e.to_string())))
        .collect()
}

/// Accumulates assignments in order; later ones win.
#[derive(Debug, Default)]
struct Builder {
    spec: ExperimentSpec,
    base_seed: Option<u64>,
    seed_count: Option<u64>,
    seeds_set: bool,
    algorithms_set: bool,
}

impl Builder {
    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let c = &mut self.spec.config;
        match key {
            "n_sensors" => c.n_sensors = parse_num(key, value)?,
            "l_x" => c.l_x = parse_num(key, value)?,
            "l_y" => c.l_y = parse_num(key, value)?,
            "r" => c.r = parse_num(key, value)?,
            "e_min" => c.e_min = parse_num(key, value)?,
            "e_max" => c.e_max = parse_num(key, value)?,
            "gamma" => c.gamma = parse_num(key, value)?,
            "delta1" => c.delta1 = parse_num(key, value)?,
            "cell_size" => c.cell_size = parse_num(key, value)?,
            "h_t" => c.h_t = parse_num(key, value)?,
            "half_angle" => c.half_angle = parse_num(key, value)?,
            "range" => c.range = parse_num(key, value)?,
            "elevation_min" => c.elevation_min = parse_num(key, value)?,
            "elevation_max" => c.elevation_max = parse_num(key, value)?,
            "e_sense" => c.e_sense = parse_num(key, value)?,
            "e_relay" => c.e_relay = parse_num(key, value)?,
            "e_idle" => c.e_idle = parse_num(key, value)?,
            "reselect_policy" => {
                c.reselect_policy = value
                    .parse::<ReselectPolicy>()
                    .map_err(|e| invalid(key, e.to_string()))?
            }
            "max_steps" => c.max_steps = parse_opt(key, value)?,
            "seed" => c.seed = parse_num(key, value)?,
            "priority" => c.priority = value.parse().map_err(|e: camcover_core::Error| invalid(key, e.to_string()))?,
            "base_x" => c.base_x = parse_opt(key, value)?,
            "base_y" => c.base_y = parse_opt(key, value)?,
            "resample_degenerate" => c.resample_degenerate = parse_bool(key, value)?,
            "algorithms" => {
                self.spec.algorithms = parse_algorithms(value)?;
                self.algorithms_set = true;
            }
            "seeds" => {
                self.spec.seeds = parse_seeds(value)?;
                self.seeds_set = true;
            }
            "base_seed" => self.base_seed = Some(parse_num(key, value)?),
            "seed_count" => self.seed_count = Some(parse_num(key, value)?),
            "out" => self.spec.out_dir = PathBuf::from(value.trim()),
            "formats" => {
                let mut f = Formats { csv: false, json: false };
                for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    match part {
                        "csv" => f.csv = true,
                        "json" => f.json = true,
                        other => return Err(invalid(key, format!("unknown format `{other}`"))),
                    }
                }
                self.spec.formats = f;
            }
            other => {
                return Err(CliError::UnknownKey {
                    key: other.to_string(),
                })
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Result<ExperimentSpec> {
        if !self.seeds_set {
            self.spec.seeds = match (self.base_seed, self.seed_count) {
                (Some(base), Some(n)) => (base..base + n).collect(),
                (Some(base), None) => vec![base],
                (None, Some(n)) => (1..=n).collect(),
                (None, None) => vec![self.spec.config.seed],
            };
        }
        if !self.algorithms_set {
            self.spec.algorithms = vec![self.spec.config.priority];
        }
        self.spec.validate()?;
        Ok(self.spec)
    }
}

/// Splits a `key = value` text into assignments, skipping blanks and comments.
pub fn parse_assignments(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Syntax {
                path: path.to_path_buf(),
                line: i + 1,
                text: raw.to_string(),
            });
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Parses a `key=value` override.
pub fn parse_override(arg: &str) -> Result<(String, String)> {
    arg.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| invalid(arg, "override must look like key=value"))
}

/// Builds a spec from an optional file and ordered overrides.
pub fn parse_config(file: Option<&Path>, overrides: &[(String, String)]) -> Result<ExperimentSpec> {
    let mut b = Builder::default();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => CliError::MissingFile {
                path: path.to_path_buf(),
            },
            _ => CliError::io(path, e),
        })?;
        for (k, v) in parse_assignments(&text, path)? {
            b.apply(&k, &v)?;
        }
    }
    for (k, v) in overrides {
        b.apply(k, v)?;
    }
    b.finish()
}
