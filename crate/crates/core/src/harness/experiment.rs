use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{run_ga, run_pso, GaConfig, PsoConfig};
use crate::error::{Error, Result};
use crate::objectives::{lookup, ObjectiveSpec};
use crate::slo::{run_slo, SloConfig};
use crate::trace::RunResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Slo,
    Pso,
    Ga,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Slo => "slo",
            Algorithm::Pso => "pso",
            Algorithm::Ga => "ga",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "slo" => Ok(Algorithm::Slo),
            "pso" => Ok(Algorithm::Pso),
            "ga" => Ok(Algorithm::Ga),
            other => Err(Error::InvalidConfig(format!(
                "unknown algorithm `{other}`; expected slo, pso or ga"
            ))),
        }
    }
}

/// Optimizer settings; the seed inside is replaced per run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AlgorithmConfig {
    Slo(SloConfig),
    Pso(PsoConfig),
    Ga(GaConfig),
}

impl AlgorithmConfig {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmConfig::Slo(_) => Algorithm::Slo,
            AlgorithmConfig::Pso(_) => Algorithm::Pso,
            AlgorithmConfig::Ga(_) => Algorithm::Ga,
        }
    }

    pub fn default_for(algorithm: Algorithm) -> Self {
        match algorithm {
            Algorithm::Slo => AlgorithmConfig::Slo(SloConfig::default()),
            Algorithm::Pso => AlgorithmConfig::Pso(PsoConfig::default()),
            Algorithm::Ga => AlgorithmConfig::Ga(GaConfig::default()),
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            AlgorithmConfig::Slo(c) => AlgorithmConfig::Slo(SloConfig { seed, ..c }),
            AlgorithmConfig::Pso(c) => AlgorithmConfig::Pso(PsoConfig { seed, ..c }),
            AlgorithmConfig::Ga(c) => AlgorithmConfig::Ga(GaConfig { seed, ..c }),
        }
    }

    pub fn run(&self, objective: &ObjectiveSpec) -> Result<RunResult> {
        match self {
            AlgorithmConfig::Slo(c) => run_slo(c, objective),
            AlgorithmConfig::Pso(c) => run_pso(c, objective),
            AlgorithmConfig::Ga(c) => run_ga(c, objective),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub objective_name: String,
    pub runs: usize,
    pub base_seed: u64,
    pub algorithm: AlgorithmConfig,
}

impl ExperimentConfig {
    /// Five runs with the algorithm's defaults.
    pub fn new(objective_name: impl Into<String>, algorithm: Algorithm, base_seed: u64) -> Self {
        Self {
            objective_name: objective_name.into(),
            runs: 5,
            base_seed,
            algorithm: AlgorithmConfig::default_for(algorithm),
        }
    }

    /// Seed of run `index`: `base_seed + index` (wrapping).
    pub fn seed_for(&self, index: usize) -> u64 {
        self.base_seed.wrapping_add(index as u64)
    }
}

/// Runs `config.runs` independently seeded runs, possibly in parallel.
/// Results come back in run-index order; the first failing run (by index)
/// is reported.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunResult>> {
    if config.runs == 0 {
        return Err(Error::InvalidConfig("runs must be at least 1".into()));
    }
    let objective = lookup(&config.objective_name)?;
    let outcomes: Vec<Result<RunResult>> = (0..config.runs)
        .into_par_iter()
        .map(|index| {
            config
                .algorithm
                .with_seed(config.seed_for(index))
                .run(&objective)
                .map_err(|e| Error::Run {
                    index,
                    source: Box::new(e),
                })
        })
        .collect();
    outcomes.into_iter().collect()
}
