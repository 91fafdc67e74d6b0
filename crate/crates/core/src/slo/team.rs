use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::objectives::{Bounds, ObjectiveSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Wealthiest,
    Regular,
    Weakest,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::Wealthiest, Tier::Regular, Tier::Weakest];

    pub fn as_str(&self) -> &'static str {
        match self {
            Tier::Wealthiest => "wealthiest",
            Tier::Regular => "regular",
            Tier::Weakest => "weakest",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Position of a team inside the league.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TeamId {
    pub tier: Tier,
    pub index: usize,
}

impl fmt::Display for TeamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} team #{}", self.tier, self.index)
    }
}

/// What happened to a team during the current (or last) season.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Training {
    /// Dimension that was perturbed.
    pub post: usize,
    /// Value at `post` before training.
    pub previous_value: f64,
    /// Score before the perturbation.
    pub pre_train_score: f64,
    /// Value written at `post` by training; this is what gets transferred.
    pub trained_value: f64,
    /// Post-training score minus `pre_train_score`; `None` until evaluated.
    pub delta: Option<f64>,
}

/// A candidate solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Team {
    pub values: Vec<f64>,
    pub score: f64,
    pub tier: Tier,
    pub training: Option<Training>,
}

impl Team {
    pub fn new(values: Vec<f64>, score: f64, tier: Tier) -> Self {
        Self {
            values,
            score,
            tier,
            training: None,
        }
    }

    pub fn trained_post(&self) -> Option<usize> {
        self.training.map(|t| t.post)
    }

    pub fn pre_train_score(&self) -> Option<f64> {
        self.training.map(|t| t.pre_train_score)
    }

    pub fn delta(&self) -> Option<f64> {
        self.training.and_then(|t| t.delta)
    }

    /// `delta > 0`; a zero delta is not an improvement.
    pub fn improved(&self) -> bool {
        self.delta().is_some_and(|d| d > 0.0)
    }
}

/// Picks the dimension to train, uniformly over `[0, dimension_count)`.
pub fn select_post<R: Rng + ?Sized>(dimension_count: usize, rng: &mut R) -> usize {
    assert!(dimension_count >= 1, "dimension_count must be positive");
    rng.random_range(0..dimension_count)
}

/// Uniform sample inside `bounds`.
pub(crate) fn draw_in<R: Rng + ?Sized>(bounds: &Bounds, rng: &mut R) -> f64 {
    bounds.clamp(bounds.lower + rng.random::<f64>() * bounds.width())
}

/// Perturbation `u` in `[-alpha * width, alpha * width)`; consumes one draw.
pub(crate) fn draw_perturbation<R: Rng + ?Sized>(bounds: &Bounds, alpha: f64, rng: &mut R) -> f64 {
    (2.0 * rng.random::<f64>() - 1.0) * alpha * bounds.width()
}

/// Adds a uniform perturbation to `values[post]` and clamps it back into the
/// box. The score is left untouched until the league is evaluated.
pub fn train<R: Rng + ?Sized>(
    team: &mut Team,
    post: usize,
    objective: &ObjectiveSpec,
    alpha: f64,
    rng: &mut R,
) {
    let bounds = objective.bounds()[post];
    let u = draw_perturbation(&bounds, alpha, rng);
    let previous_value = team.values[post];
    let trained_value = bounds.clamp(previous_value + u);
    team.values[post] = trained_value;
    team.training = Some(Training {
        post,
        previous_value,
        pre_train_score: team.score,
        trained_value,
        delta: None,
    });
}
