use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::pso::finish;
use super::{check_finite, population_record};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;
use crate::trace::RunResult;

/// Fraction by which blend crossover extends the parents' segment on each side.
pub const BLEND_EXTENSION: f64 = 0.5;

/// Real-coded GA settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    /// Mutation standard deviation as a fraction of the domain width.
    pub mutation_sigma_fraction: f64,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 90,
            generations: 100,
            tournament_size: 3,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            mutation_sigma_fraction: 0.1,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::InvalidConfig("population must be at least 2".into()));
        }
        if self.generations == 0 {
            return Err(Error::InvalidConfig(
                "generations must be at least 1".into(),
            ));
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidConfig(
                "tournament size must be positive".into(),
            ));
        }
        for (name, r) in [
            ("crossover rate", self.crossover_rate),
            ("mutation rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {r}"
                )));
            }
        }
        if !(self.mutation_sigma_fraction.is_finite() && self.mutation_sigma_fraction >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "mutation sigma fraction must be finite and non-negative, got {}",
                self.mutation_sigma_fraction
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genes: Vec<f64>,
    pub score: f64,
}

/// Generational GA with tournament selection, blend crossover, bounded
/// Gaussian mutation and a single elite.
pub struct Ga<'a> {
    config: GaConfig,
    objective: &'a ObjectiveSpec,
    rng: ChaCha8Rng,
    population: Vec<Individual>,
    best: (Vec<f64>, f64),
    evaluations: u64,
    generation: usize,
}

impl<'a> Ga<'a> {
    /// Uniform random initial population.
    pub fn new(config: GaConfig, objective: &'a ObjectiveSpec) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let genes = (0..config.population)
            .map(|_| {
                objective
                    .bounds()
                    .iter()
                    .map(|b| b.clamp(b.lower + rng.random::<f64>() * b.width()))
                    .collect()
            })
            .collect();
        Self::build(config, objective, rng, genes)
    }

    /// Starts from the given genomes instead of a random population.
    pub fn with_population(
        config: GaConfig,
        objective: &'a ObjectiveSpec,
        genomes: Vec<Vec<f64>>,
    ) -> Result<Self> {
        config.validate()?;
        if genomes.len() != config.population || genomes.iter().any(|g| !objective.contains(g)) {
            return Err(Error::InvalidConfig(
                "initial population must match the configured size and lie in bounds".into(),
            ));
        }
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        Self::build(config, objective, rng, genomes)
    }

    fn build(
        config: GaConfig,
        objective: &'a ObjectiveSpec,
        rng: ChaCha8Rng,
        genomes: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let population = genomes
            .into_iter()
            .enumerate()
            .map(|(i, genes)| {
                let score = check_finite(objective, &genes, "individual", i)?;
                Ok(Individual { genes, score })
            })
            .collect::<Result<Vec<_>>>()?;
        let elite = &population[elite_index(&population)];
        let best = (elite.genes.clone(), elite.score);
        Ok(Self {
            evaluations: population.len() as u64,
            config,
            objective,
            rng,
            population,
            best,
            generation: 0,
        })
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn best(&self) -> (&[f64], f64) {
        (&self.best.0, self.best.1)
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    fn tournament(&mut self) -> usize {
        let n = self.population.len();
        let mut winner = self.rng.random_range(0..n);
        for _ in 1..self.config.tournament_size {
            let challenger = self.rng.random_range(0..n);
            if self.population[challenger].score > self.population[winner].score {
                winner = challenger;
            }
        }
        winner
    }

    /// Breeds the next generation and returns the best score in it.
    pub fn step(&mut self) -> Result<f64> {
        let elite = self.population[elite_index(&self.population)].clone();
        let mut next = Vec::with_capacity(self.population.len());
        next.push(elite);
        let bounds = self.objective.bounds();
        while next.len() < self.population.len() {
            let a = self.tournament();
            let b = self.tournament();
            let mut child = self.population[a].genes.clone();
            if self.rng.random::<f64>() < self.config.crossover_rate {
                for (d, bound) in bounds.iter().enumerate() {
                    let (x, y) = (self.population[a].genes[d], self.population[b].genes[d]);
                    let (lo, hi) = (x.min(y), x.max(y));
                    let ext = BLEND_EXTENSION * (hi - lo);
                    let u: f64 = self.rng.random();
                    child[d] = bound.clamp(lo - ext + u * (hi - lo + 2.0 * ext));
                }
            }
            for (d, bound) in bounds.iter().enumerate() {
                if self.rng.random::<f64>() < self.config.mutation_rate {
                    let sigma = self.config.mutation_sigma_fraction * bound.width();
                    let noise = Normal::new(0.0, sigma)
                        .expect("sigma is finite and non-negative")
                        .sample(&mut self.rng);
                    child[d] = bound.clamp(child[d] + noise);
                }
            }
            let score = check_finite(self.objective, &child, "individual", next.len())?;
            self.evaluations += 1;
            next.push(Individual {
                genes: child,
                score,
            });
        }
        self.population = next;
        self.generation += 1;

        let best = &self.population[elite_index(&self.population)];
        if best.score > self.best.1 {
            self.best = (best.genes.clone(), best.score);
        }
        Ok(best.score)
    }

    pub fn run(mut self) -> Result<RunResult> {
        let mut trace = Vec::with_capacity(self.config.generations);
        for generation in 1..=self.config.generations {
            self.step()?;
            trace.push(population_record(generation, self.best.1));
        }
        Ok(finish(
            self.config.seed,
            self.objective,
            self.best,
            trace,
            self.evaluations,
        ))
    }
}

/// Index of the best individual; ties go to the lowest index.
fn elite_index(population: &[Individual]) -> usize {
    let mut best = 0;
    for (i, ind) in population.iter().enumerate() {
        if ind.score > population[best].score {
            best = i;
        }
    }
    best
}

pub fn run_ga(config: &GaConfig, objective: &ObjectiveSpec) -> Result<RunResult> {
    Ga::new(*config, objective)?.run()
}
