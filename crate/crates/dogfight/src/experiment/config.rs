//! Experiment configuration: TOML files with flat key/value sections, plus
//! command-line overrides applied on top.

use std::path::PathBuf;

use serde::Deserialize;

use crate::baselines::PsoParams;
use crate::dos::DosParams;

use super::ExperimentError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub root_seed: u64,
    pub runs: usize,
    #[serde(default = "default_workers")]
    pub workers: usize,
    pub out_dir: PathBuf,
    /// Optional override of the per-problem default budget.
    #[serde(default)]
    pub budget: Option<u64>,
    /// Record position histories and emit per-run diversity traces.
    #[serde(default)]
    pub diversity: bool,
    pub problem: ProblemSelector,
    pub algorithms: Vec<AlgorithmConfig>,
}

fn default_workers() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSelector {
    Benchmark {
        name: String,
        dimension: usize,
    },
    Engineering {
        id: String,
    },
    Pathplan {
        #[serde(default = "default_terrain_seed")]
        terrain_seed: u64,
        /// `none` or `preset:table45`.
        #[serde(default = "default_zones")]
        zones: String,
    },
}

fn default_terrain_seed() -> u64 {
    7
}

fn default_zones() -> String {
    "none".to_string()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
    /// `dos`, `pso` or `random`.
    pub name: String,
    pub swarm_size: Option<usize>,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub k3: Option<f64>,
    pub k4: Option<f64>,
    pub k5: Option<f64>,
    pub inertia: Option<f64>,
    pub cognitive: Option<f64>,
    pub social: Option<f64>,
    pub velocity_clamp_fraction: Option<f64>,
}

/// A fully resolved optimizer choice.
#[derive(Clone, Debug)]
pub enum AlgorithmSpec {
    Dos(DosParams),
    Pso(PsoParams),
    RandomSearch,
}

impl AlgorithmSpec {
    pub fn label(&self) -> &'static str {
        match self {
            AlgorithmSpec::Dos(_) => "dos",
            AlgorithmSpec::Pso(_) => "pso",
            AlgorithmSpec::RandomSearch => "random",
        }
    }

    pub fn supports_diversity(&self) -> bool {
        !matches!(self, AlgorithmSpec::RandomSearch)
    }
}

impl AlgorithmConfig {
    pub fn resolve(&self) -> Result<AlgorithmSpec, ExperimentError> {
        match self.name.to_ascii_lowercase().as_str() {
            "dos" => {
                let mut p = DosParams::default();
                if let Some(n) = self.swarm_size {
                    p.swarm_size = n;
                }
                if let Some(v) = self.k1 {
                    p.k1 = v;
                }
                if let Some(v) = self.k2 {
                    p.k2 = v;
                }
                if let Some(v) = self.k3 {
                    p.k3 = v;
                }
                if let Some(v) = self.k4 {
                    p.k4 = v;
                }
                if let Some(v) = self.k5 {
                    p.k5 = v;
                }
                p.validate().map_err(ExperimentError::InvalidConfig)?;
                Ok(AlgorithmSpec::Dos(p))
            }
            "pso" => {
                let mut p = PsoParams::default();
                if let Some(n) = self.swarm_size {
                    p.swarm_size = n;
                }
                if let Some(v) = self.inertia {
                    p.inertia = v;
                }
                if let Some(v) = self.cognitive {
                    p.cognitive = v;
                }
                if let Some(v) = self.social {
                    p.social = v;
                }
                if let Some(v) = self.velocity_clamp_fraction {
                    p.velocity_clamp_fraction = v;
                }
                Ok(AlgorithmSpec::Pso(p))
            }
            "random" | "random_search" => Ok(AlgorithmSpec::RandomSearch),
            other => Err(ExperimentError::InvalidConfig(format!(
                "unknown algorithm `{other}`; expected dos, pso or random"
            ))),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.runs == 0 {
            return Err(ExperimentError::InvalidConfig(
                "runs must be at least 1".into(),
            ));
        }
        if self.workers == 0 {
            return Err(ExperimentError::InvalidConfig(
                "workers must be at least 1".into(),
            ));
        }
        if self.algorithms.is_empty() {
            return Err(ExperimentError::InvalidConfig(
                "at least one algorithm is required".into(),
            ));
        }
        for a in &self.algorithms {
            a.resolve()?;
        }
        if let ProblemSelector::Pathplan { zones, .. } = &self.problem {
            if zones != "none" && zones != "preset:table45" {
                return Err(ExperimentError::InvalidConfig(format!(
                    "zones must be `none` or `preset:table45`, got `{zones}`"
                )));
            }
        }
        Ok(())
    }
}
