use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use sortition_core::SelectorKind;

/// Synthetic population used when no dataset is given.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    #[serde(default = "default_points")]
    pub points: usize,
    /// Share of the total mass held by a single point.
    #[serde(default = "default_heavy_share")]
    pub heavy_share: f64,
    #[serde(default)]
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec { points: default_points(), heavy_share: default_heavy_share(), seed: 0 }
    }
}

/// Experiment description, read from TOML.
///
/// ```toml
/// dataset = "data/adult_like.csv"
/// schema = "data/adult_like.toml"
/// seeds = 20
/// k = 40
/// q = [1, 2, 3]
/// algorithms = ["uniform", "fgc"]
/// output = "results"
/// ```
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: Option<PathBuf>,
    pub schema: Option<PathBuf>,
    pub synthetic: Option<SyntheticSpec>,
    /// Number of random feature-weight draws.
    #[serde(default = "default_seeds")]
    pub seeds: usize,
    /// Largest number of distinct points kept.
    #[serde(default = "default_subsample")]
    pub subsample: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    /// Ranks to evaluate; all of `1..=k` when absent.
    pub q: Option<Vec<usize>>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Effective population per seat: `N = resolution_per_seat · k`.
    #[serde(default = "default_resolution")]
    pub resolution_per_seat: u64,
    /// Compute the social-cost ratio against the local-search optimum.
    #[serde(default = "default_true")]
    pub social_cost: bool,
    #[serde(default = "default_restarts")]
    pub greedy_restarts: usize,
    /// Largest population decomposed with the full Birkhoff route.
    #[serde(default = "default_gate")]
    pub gate: u64,
}

fn default_points() -> usize {
    1513
}
fn default_heavy_share() -> f64 {
    0.083
}
fn default_seeds() -> usize {
    100
}
fn default_subsample() -> usize {
    300
}
fn default_k() -> usize {
    40
}
fn default_algorithms() -> Vec<String> {
    vec!["uniform".into(), "fgc".into()]
}
fn default_output() -> PathBuf {
    PathBuf::from("results")
}
fn default_resolution() -> u64 {
    1000
}
fn default_true() -> bool {
    true
}
fn default_restarts() -> usize {
    5
}
fn default_gate() -> u64 {
    2000
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        toml::from_str("").expect("all fields have defaults")
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).context("parsing experiment config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative paths inside are taken relative to it.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.dataset, &mut cfg.schema].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if cfg.output.is_relative() {
            cfg.output = base.join(&cfg.output);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds == 0 {
            bail!("seeds must be at least 1");
        }
        if self.k == 0 {
            bail!("k must be at least 1");
        }
        if self.subsample == 0 {
            bail!("subsample must be at least 1");
        }
        if self.subsample as u64 > self.gate {
            bail!("subsample cap {} exceeds the Birkhoff gate {}", self.subsample, self.gate);
        }
        if self.resolution_per_seat == 0 {
            bail!("resolution_per_seat must be positive");
        }
        match (&self.dataset, &self.schema) {
            (Some(_), None) | (None, Some(_)) => bail!("dataset and schema must be given together"),
            (Some(_), Some(_)) if self.synthetic.is_some() => bail!("give either a dataset or a synthetic section, not both"),
            _ => {}
        }
        if let Some(s) = &self.synthetic {
            if s.points < 2 || !(s.heavy_share > 0.0 && s.heavy_share < 1.0) {
                bail!("synthetic population needs at least 2 points and a heavy share in (0, 1)");
            }
        }
        for q in self.ranks() {
            if q == 0 || q > self.k {
                bail!("rank q = {q} must lie in 1..={}", self.k);
            }
        }
        if self.algorithms.is_empty() {
            bail!("no algorithms listed");
        }
        self.selector_kinds()?;
        Ok(())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.q.clone().unwrap_or_else(|| (1..=self.k).collect())
    }

    pub fn selector_kinds(&self) -> Result<Vec<SelectorKind>> {
        let kinds = self.algorithms.iter().map(|a| a.parse::<SelectorKind>()).collect::<Result<Vec<_>, _>>()?;
        Ok(kinds)
    }

    /// Effective population used to discretize weights.
    pub fn resolution(&self) -> u64 {
        self.resolution_per_seat * self.k as u64
    }
}
