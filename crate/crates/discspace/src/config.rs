//! Experiment configuration: a JSON file holding the function documents and
//! command parameters. Identical config + seed reproduces byte-identical
//! result files. `DISCSPACE_NR` / `DISCSPACE_NT` override quadrature sizes
//! from the environment.

use serde::Deserialize;

use crate::error::{DiscError, Result};
use crate::operators::ThinConfig;
use crate::quad::{DEFAULT_NR, DEFAULT_NT};
use crate::spaces::{BmoaConfig, SearchConfig};

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSizes {
    #[serde(default = "default_nr")]
    pub n_r: usize,
    #[serde(default = "default_nt")]
    pub n_t: usize,
}

fn default_nr() -> usize {
    DEFAULT_NR
}

fn default_nt() -> usize {
    DEFAULT_NT
}

impl Default for QuadratureSizes {
    fn default() -> Self {
        Self {
            n_r: DEFAULT_NR,
            n_t: DEFAULT_NT,
        }
    }
}

fn env_usize(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| DiscError::Config(format!("{name} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

impl QuadratureSizes {
    /// Apply `DISCSPACE_NR` / `DISCSPACE_NT` environment overrides.
    pub fn with_env_overrides(mut self) -> Result<Self> {
        if let Some(nr) = env_usize("DISCSPACE_NR")? {
            self.n_r = nr;
        }
        if let Some(nt) = env_usize("DISCSPACE_NT")? {
            self.n_t = nt;
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThinSection {
    #[serde(default = "default_thin_target")]
    pub target: f64,
    #[serde(default = "default_thin_tighten")]
    pub tighten: f64,
    #[serde(default = "default_max_candidates")]
    pub max_candidates: u32,
}

fn default_thin_target() -> f64 {
    0.5
}

fn default_thin_tighten() -> f64 {
    0.55
}

fn default_max_candidates() -> u32 {
    44
}

impl Default for ThinSection {
    fn default() -> Self {
        Self {
            target: default_thin_target(),
            tighten: default_thin_tighten(),
            max_candidates: default_max_candidates(),
        }
    }
}

impl From<&ThinSection> for ThinConfig {
    fn from(s: &ThinSection) -> Self {
        ThinConfig {
            target: s.target,
            tighten: s.tighten,
            max_candidates: s.max_candidates,
        }
    }
}

/// Full experiment configuration; command-specific sections are optional
/// and validated by the command that consumes them.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    #[serde(default)]
    pub quadrature: QuadratureSizes,
    /// Space selector: bloch | dirichlet | bergman | h2 | bmoa for `norm`,
    /// bloch | bmoa | dirichlet for `extremal`.
    pub space: Option<String>,
    /// Function documents for `norm`.
    #[serde(default)]
    pub functions: Vec<serde_json::Value>,
    /// Operator selector for `opnorm`: Sg | Tg.
    pub op: Option<String>,
    /// Symbol document for `opnorm` / `extremal`.
    pub g: Option<serde_json::Value>,
    /// Witness radii along the arg-max ray for `opnorm`.
    pub witness_radii: Option<Vec<f64>>,
    /// Truncation lengths for the extremal convergence table.
    pub schedule: Option<Vec<usize>>,
    #[serde(default)]
    pub thin: ThinSection,
    /// Corpus size for the Dirichlet deficiency scan.
    pub corpus_size: Option<usize>,
    pub max_degree: Option<usize>,
    /// Acceptance tolerance for the extremal witness check rows.
    pub witness_tol: Option<f64>,
    pub search: Option<SearchConfig>,
    pub bmoa: Option<BmoaConfig>,
}

impl ExperimentConfig {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(7)
    }

    pub fn search_config(&self) -> SearchConfig {
        self.search.clone().unwrap_or_default()
    }

    pub fn bmoa_config(&self) -> BmoaConfig {
        self.bmoa.clone().unwrap_or_default()
    }
}

/// Load a config file, applying environment overrides to quadrature sizes.
pub fn load_config(path: &std::path::Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DiscError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| DiscError::Config(format!("{}: {e}", path.display())))?;
    cfg.quadrature = cfg.quadrature.with_env_overrides()?;
    Ok(cfg)
}
