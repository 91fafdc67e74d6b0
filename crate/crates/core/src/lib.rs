//! Soccer League Optimization (SLO), a population-based metaheuristic where
//! candidate solutions are football teams split into wealthiest, regular and
//! weakest tiers, together with the four two-dimensional benchmarks it is
//! evaluated on, PSO and GA baselines, and a multi-run experiment harness.
//!
//! ```
//! use slo_core::{lookup, run_slo, SloConfig};
//!
//! let g4 = lookup("g4").unwrap();
//! let result = run_slo(&SloConfig { seasons: 20, seed: 7, ..SloConfig::default() }, &g4).unwrap();
//! assert_eq!(result.trace.len(), 20);
//! assert!(g4.contains(&result.best_point));
//! ```

pub mod baselines;
pub mod error;
pub mod harness;
pub mod objectives;
pub mod slo;
pub mod trace;

pub use baselines::{run_ga, run_pso, GaConfig, PsoConfig};
pub use error::{Error, Result};
pub use harness::{
    check_acceptance, run_experiment, summarize, Algorithm, AlgorithmConfig, ExperimentConfig,
    SummaryTable, Tolerances,
};
pub use objectives::{lookup, registry, Bounds, ObjectiveSpec, Sense, OBJECTIVE_NAMES};
pub use slo::{run_slo, League, SloConfig, SloRun, Team, TeamId, Tier};
pub use trace::{RunResult, SeasonRecord};
