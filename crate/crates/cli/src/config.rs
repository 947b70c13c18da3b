use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::args::{FockArgs, Format, Global};

/// Settings from an optional JSON file, overridden by flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub degree_bound: Option<usize>,
    pub cutoff: Option<usize>,
    pub v: Option<f64>,
    pub tolerance: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub degree_bound: usize,
    pub cutoff: usize,
    pub v: f64,
    pub tolerance: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(g: &Global, fock: Option<&FockArgs>) -> Result<RunConfig> {
        let file = match &g.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let cfg = RunConfig {
            m: g.m.or(file.m).unwrap_or(1),
            n: g.n.or(file.n).unwrap_or(1),
            degree_bound: g.degree_bound.or(file.degree_bound).unwrap_or(qgreen_core::rewrite::DEFAULT_DEGREE_BOUND),
            cutoff: fock.and_then(|f| f.cutoff).or(file.cutoff).unwrap_or(8),
            v: fock.and_then(|f| f.v).or(file.v).unwrap_or(1.1),
            tolerance: fock.and_then(|f| f.tolerance).or(file.tolerance),
            format: g.format.or(file.format),
            out: g.out.clone().or(file.out),
            seed: g.seed.or(file.seed),
        };
        if cfg.m == 0 || cfg.n == 0 {
            bail!("m and n must be at least 1");
        }
        if cfg.degree_bound < 2 {
            bail!("degree bound must be at least 2");
        }
        Ok(cfg)
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn check_numeric(&self) -> Result<()> {
        if (self.v.abs() - 1.0).abs() < 1e-12 || self.v == 0.0 || !self.v.is_finite() {
            bail!("v = {} is not admissible for numeric commands", self.v);
        }
        if self.cutoff < 2 {
            bail!("cutoff must be at least 2");
        }
        Ok(())
    }
}
