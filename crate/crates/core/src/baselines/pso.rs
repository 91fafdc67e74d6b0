use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_finite, population_record};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::trace::{RunResult, SeasonRecord};

/// Global-best particle swarm settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 90,
            iterations: 100,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            seed: 0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::InvalidConfig("swarm size must be at least 2".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be at least 1".into()));
        }
        for (name, c) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
        ] {
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} coefficient must be finite and positive, got {c}"
                )));
            }
        }
        Ok(())
    }
}

struct Particle {
    position: Vec<f64>,
    velocity: Vec<f64>,
    score: f64,
    best_position: Vec<f64>,
    best_score: f64,
}

/// Runs global-best PSO. Positions start uniform in the box with zero
/// velocity; a coordinate that leaves the box is clamped and its velocity
/// zeroed.
pub fn run_pso(config: &PsoConfig, objective: &ObjectiveSpec) -> Result<RunResult> {
    run_pso_observed(config, objective, |_| {})
}

/// Same as [`run_pso`], calling `observe` with every particle position after
/// initialization and after each iteration.
pub fn run_pso_observed(
    config: &PsoConfig,
    objective: &ObjectiveSpec,
    mut observe: impl FnMut(&[Vec<f64>]),
) -> Result<RunResult> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let bounds = objective.bounds();
    let mut evaluations = 0u64;

    let mut swarm = Vec::with_capacity(config.swarm_size);
    for i in 0..config.swarm_size {
        let position: Vec<f64> = bounds
            .iter()
            .map(|b| b.clamp(b.lower + rng.random::<f64>() * b.width()))
            .collect();
        let score = check_finite(objective, &position, "particle", i)?;
        evaluations += 1;
        swarm.push(Particle {
            velocity: vec![0.0; position.len()],
            best_position: position.clone(),
            best_score: score,
            position,
            score,
        });
    }
    let mut global = swarm
        .iter()
        .fold(None::<&Particle>, |acc, p| match acc {
            Some(a) if a.score >= p.score => Some(a),
            _ => Some(p),
        })
        .map(|p| (p.position.clone(), p.score))
        .expect("non-empty swarm");
    observe(&positions(&swarm));

    let mut trace = Vec::with_capacity(config.iterations);
    for iteration in 1..=config.iterations {
        for (i, p) in swarm.iter_mut().enumerate() {
            for (d, b) in bounds.iter().enumerate() {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let x = p.position[d];
                let v = config.inertia * p.velocity[d]
                    + config.cognitive * r1 * (p.best_position[d] - x)
                    + config.social * r2 * (global.0[d] - x);
                let moved = x + v;
                if b.contains(moved) {
                    p.position[d] = moved;
                    p.velocity[d] = v;
                } else {
                    p.position[d] = b.clamp(moved);
                    p.velocity[d] = 0.0;
                }
            }
            p.score = check_finite(objective, &p.position, "particle", i)?;
            evaluations += 1;
            if p.score > p.best_score {
                p.best_score = p.score;
                p.best_position.clone_from(&p.position);
            }
            if p.score > global.1 {
                global = (p.position.clone(), p.score);
            }
        }
        observe(&positions(&swarm));
        trace.push(population_record(iteration, global.1));
    }

    Ok(finish(config.seed, objective, global, trace, evaluations))
}

fn positions(swarm: &[Particle]) -> Vec<Vec<f64>> {
    swarm.iter().map(|p| p.position.clone()).collect()
}

pub(super) fn finish(
    seed: u64,
    objective: &ObjectiveSpec,
    (best_point, best_score): (Vec<f64>, f64),
    trace: Vec<SeasonRecord>,
    evaluations_used: u64,
) -> RunResult {
    RunResult {
        seed,
        best_raw: objective.eval(&best_point),
        best_point,
        best_score,
        trace,
        evaluations_used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::lookup;

    #[test]
    fn single_iteration_trace() {
        let g3 = lookup("g3").unwrap();
        let cfg = PsoConfig {
            iterations: 1,
            ..PsoConfig::default()
        };
        let r = run_pso(&cfg, &g3).unwrap();
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.evaluations_used, 180);
    }

    #[test]
    fn swarm_stays_in_bounds() {
        let g1 = lookup("g1").unwrap();
        let cfg = PsoConfig {
            iterations: 30,
            swarm_size: 20,
            seed: 3,
            ..PsoConfig::default()
        };
        let mut snapshots = 0;
        run_pso_observed(&cfg, &g1, |swarm| {
            snapshots += 1;
            assert!(swarm.iter().all(|p| g1.contains(p)));
        })
        .unwrap();
        assert_eq!(snapshots, 31);
    }

    #[test]
    fn rejects_bad_config() {
        let g1 = lookup("g1").unwrap();
        for cfg in [
            PsoConfig {
                swarm_size: 1,
                ..PsoConfig::default()
            },
            PsoConfig {
                iterations: 0,
                ..PsoConfig::default()
            },
            PsoConfig {
                social: -1.0,
                ..PsoConfig::default()
            },
            PsoConfig {
                inertia: f64::INFINITY,
                ..PsoConfig::default()
            },
        ] {
            assert!(run_pso(&cfg, &g1).is_err());
        }
    }
}
