//! Reference optimizers used for comparison runs: a global-best particle
//! swarm and a real-coded genetic algorithm. Both maximize the objective's
//! score, like SLO. Their traces carry the best-so-far score per iteration
//! and leave the tier columns empty.

mod ga;
mod pso;

pub use ga::{run_ga, Ga, GaConfig, Individual, BLEND_EXTENSION};
pub use pso::{run_pso, run_pso_observed, PsoConfig};

use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::trace::SeasonRecord;

fn check_finite(objective: &ObjectiveSpec, point: &[f64], what: &str, index: usize) -> Result<f64> {
    let raw = objective.eval(point);
    if !raw.is_finite() {
        return Err(Error::NonFiniteEvaluation {
            team: format!("{what} #{index}"),
            point: point.to_vec(),
            value: raw,
        });
    }
    Ok(objective.to_score(raw))
}

fn population_record(iteration: usize, global_best: f64) -> SeasonRecord {
    SeasonRecord {
        season: iteration,
        best_wealthy: None,
        best_regular: None,
        best_weakest: None,
        global_best,
    }
}
