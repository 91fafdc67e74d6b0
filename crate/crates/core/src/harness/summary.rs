use serde::{Deserialize, Serialize};

use super::experiment::Algorithm;
use crate::error::{Error, Result};
use crate::objectives::{ObjectiveSpec, Sense};
use crate::trace::RunResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub run: usize,
    pub seed: u64,
    pub best_raw: f64,
    pub best_score: f64,
    pub best_point: Vec<f64>,
    pub evaluations: u64,
}

/// Order statistics plus mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub best: f64,
    pub median: f64,
    pub worst: f64,
    pub mean: f64,
    pub stddev: f64,
}

impl Aggregates {
    /// `higher_is_better` decides which end of the sample is `best`.
    pub fn from_values(values: &[f64], higher_is_better: bool) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyResults);
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (best, worst) = if higher_is_better { (hi, lo) } else { (lo, hi) };
        Ok(Self {
            best,
            median: median(values)?,
            worst,
            mean,
            stddev: var.sqrt(),
        })
    }
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Ok(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    })
}

/// Multi-run statistics in the shape of a results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub objective: String,
    pub algorithm: Algorithm,
    pub rows: Vec<RunRow>,
    /// Statistics over raw objective values.
    pub raw: Aggregates,
    /// Statistics over maximization scores.
    pub score: Aggregates,
    /// Point of the best-scoring run.
    pub best_point: Vec<f64>,
}

pub fn summarize(
    objective: &ObjectiveSpec,
    algorithm: Algorithm,
    results: &[RunResult],
) -> Result<SummaryTable> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let rows: Vec<RunRow> = results
        .iter()
        .enumerate()
        .map(|(run, r)| RunRow {
            run,
            seed: r.seed,
            best_raw: r.best_raw,
            best_score: r.best_score,
            best_point: r.best_point.clone(),
            evaluations: r.evaluations_used,
        })
        .collect();
    let raws: Vec<f64> = rows.iter().map(|r| r.best_raw).collect();
    let scores: Vec<f64> = rows.iter().map(|r| r.best_score).collect();
    let best_row = rows
        .iter()
        .reduce(|a, b| if b.best_score > a.best_score { b } else { a })
        .expect("non-empty");
    Ok(SummaryTable {
        objective: objective.name().to_string(),
        algorithm,
        raw: Aggregates::from_values(&raws, objective.sense() == Sense::Maximize)?,
        score: Aggregates::from_values(&scores, true)?,
        best_point: best_row.best_point.clone(),
        rows,
    })
}
