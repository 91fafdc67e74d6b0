use serde::{Deserialize, Serialize};

/// Per-season (or per-iteration) convergence record.
///
/// Scores are maximization scores. The tier columns hold the best score of
/// the tier at the end of the season; baselines only fill `best_wealthy`
/// with the best score of the current population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeasonRecord {
    pub season: usize,
    pub best_wealthy: Option<f64>,
    pub best_regular: Option<f64>,
    pub best_weakest: Option<f64>,
    pub global_best: f64,
}

/// Outcome of a single optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub best_point: Vec<f64>,
    /// Maximization score of `best_point`.
    pub best_score: f64,
    /// Raw objective value of `best_point`.
    pub best_raw: f64,
    pub trace: Vec<SeasonRecord>,
    pub evaluations_used: u64,
}
