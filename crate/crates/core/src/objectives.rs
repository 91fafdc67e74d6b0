//! Benchmark objectives and the registry the CLI resolves names against.
//!
//! All four shipped benchmarks are two-dimensional minimization problems.
//! Optimizers in this crate maximize a *score*; [`ObjectiveSpec::to_score`]
//! maps a raw objective value to that score (`-f` for minimization).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed search interval for a single dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub const fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn clamp(&self, value: f64) -> f64 {
        value.clamp(self.lower, self.upper)
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A benchmark problem: evaluation function, box bounds, sense and known optimum.
#[derive(Debug, Clone)]
pub struct ObjectiveSpec {
    name: String,
    bounds: Vec<Bounds>,
    sense: Sense,
    known_optimum_value: f64,
    known_optimum_points: Vec<Vec<f64>>,
    func: fn(&[f64]) -> f64,
}

impl ObjectiveSpec {
    /// Builds a validated objective. Every bound must be finite with
    /// `lower < upper`, and every known optimum must sit inside the box.
    pub fn new(
        name: impl Into<String>,
        bounds: Vec<Bounds>,
        sense: Sense,
        known_optimum_value: f64,
        known_optimum_points: Vec<Vec<f64>>,
        func: fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let name = name.into();
        if bounds.is_empty() {
            return Err(Error::InvalidObjective(format!(
                "{name}: dimension must be at least 1"
            )));
        }
        for (d, b) in bounds.iter().enumerate() {
            if !b.lower.is_finite() || !b.upper.is_finite() {
                return Err(Error::InvalidObjective(format!(
                    "{name}: non-finite bounds [{}, {}] in dimension {d}",
                    b.lower, b.upper
                )));
            }
            if b.lower >= b.upper {
                return Err(Error::InvalidObjective(format!(
                    "{name}: lower bound {} is not below upper bound {} in dimension {d}",
                    b.lower, b.upper
                )));
            }
        }
        for p in &known_optimum_points {
            if p.len() != bounds.len() || !p.iter().zip(&bounds).all(|(v, b)| b.contains(*v)) {
                return Err(Error::InvalidObjective(format!(
                    "{name}: known optimum {p:?} lies outside the search box"
                )));
            }
        }
        Ok(Self {
            name,
            bounds,
            sense,
            known_optimum_value,
            known_optimum_points,
            func,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// Raw objective value at the global optimum.
    pub fn known_optimum_value(&self) -> f64 {
        self.known_optimum_value
    }

    /// Every global optimizer of the problem.
    pub fn known_optimum_points(&self) -> &[Vec<f64>] {
        &self.known_optimum_points
    }

    /// Raw objective value `f(point)`.
    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dimension());
        (self.func)(point)
    }

    /// Maps a raw value onto the maximization score.
    pub fn to_score(&self, raw: f64) -> f64 {
        let score = match self.sense {
            Sense::Maximize => raw,
            Sense::Minimize => -raw,
        };
        // -0.0 prints as "-0"
        if score == 0.0 {
            0.0
        } else {
            score
        }
    }

    /// Inverse of [`to_score`](Self::to_score); the mapping is an involution.
    pub fn to_raw(&self, score: f64) -> f64 {
        self.to_score(score)
    }

    /// Maximization score of `point`.
    pub fn score(&self, point: &[f64]) -> f64 {
        self.to_score(self.eval(point))
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dimension()
            && point.iter().zip(&self.bounds).all(|(v, b)| b.contains(*v))
    }

    /// Euclidean distance from `point` to the closest known optimizer.
    pub fn distance_to_nearest_optimum(&self, point: &[f64]) -> f64 {
        self.known_optimum_points
            .iter()
            .map(|opt| {
                opt.iter()
                    .zip(point)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Beale-form residual sum.
pub fn eval_g1(p: &[f64]) -> f64 {
    let (x, y) = (p[0], p[1]);
    (1.5 - x * (1.0 - y)).powi(2)
        + (2.25 - x * (1.0 - y.powi(2))).powi(2)
        + (2.625 - x * (1.0 - y.powi(3))).powi(2)
}

/// Goldstein-Price.
pub fn eval_g2(p: &[f64]) -> f64 {
    let (x, y) = (p[0], p[1]);
    let a = 1.0
        + (x + y + 1.0).powi(2)
            * (19.0 - 14.0 * x + 3.0 * x.powi(2) - 14.0 * y + 6.0 * x * y + 3.0 * y.powi(2));
    let b = 30.0
        + (2.0 * x - 3.0 * y).powi(2)
            * (18.0 - 32.0 * x + 12.0 * x.powi(2) + 48.0 * y - 36.0 * x * y + 27.0 * y.powi(2));
    a * b
}

/// Freudenstein-Roth shifted up by one, so the minimum value is 1.
pub fn eval_g3(p: &[f64]) -> f64 {
    let (x, y) = (p[0], p[1]);
    1.0 + (-13.0 + x - y.powi(3) + 5.0 * y.powi(2) - 2.0 * y).powi(2)
        + (-29.0 + x + y.powi(3) + y.powi(2) - 14.0 * y).powi(2)
}

/// Six-hump camelback, `4x² - 2.1x⁴ + x⁶/3 + xy - 4y² + 4y⁴`.
pub fn eval_g4(p: &[f64]) -> f64 {
    let (x, y) = (p[0], p[1]);
    4.0 * x.powi(2) - 2.1 * x.powi(4) + x.powi(6) / 3.0 + x * y - 4.0 * y.powi(2) + 4.0 * y.powi(4)
}

/// Registered objective names, in registry order.
pub const OBJECTIVE_NAMES: [&str; 4] = ["g1", "g2", "g3", "g4"];

// Located with a 601x401 grid scan followed by Nelder-Mead and BFGS refinement.
const G4_OPTIMUM_X: f64 = 0.089842;
const G4_OPTIMUM_Y: f64 = 0.712656;
const G4_OPTIMUM_VALUE: f64 = -1.0316284534898776;

/// Resolves a registry name (`g1`..`g4`, case-insensitive).
pub fn lookup(name: &str) -> Result<ObjectiveSpec> {
    let sq = |lo, hi| vec![Bounds::new(lo, hi); 2];
    let spec = match name.to_ascii_lowercase().as_str() {
        "g1" => ObjectiveSpec::new(
            "g1",
            sq(-4.5, 4.5),
            Sense::Minimize,
            0.0,
            vec![vec![3.0, 0.5]],
            eval_g1,
        ),
        "g2" => ObjectiveSpec::new(
            "g2",
            sq(-2.0, 2.0),
            Sense::Minimize,
            3.0,
            vec![vec![0.0, -1.0]],
            eval_g2,
        ),
        "g3" => ObjectiveSpec::new(
            "g3",
            sq(-10.0, 10.0),
            Sense::Minimize,
            1.0,
            vec![vec![5.0, 4.0]],
            eval_g3,
        ),
        "g4" => ObjectiveSpec::new(
            "g4",
            vec![Bounds::new(-3.0, 3.0), Bounds::new(-2.0, 2.0)],
            Sense::Minimize,
            G4_OPTIMUM_VALUE,
            vec![
                vec![G4_OPTIMUM_X, -G4_OPTIMUM_Y],
                vec![-G4_OPTIMUM_X, G4_OPTIMUM_Y],
            ],
            eval_g4,
        ),
        _ => {
            return Err(Error::UnknownObjective {
                name: name.to_string(),
                valid: OBJECTIVE_NAMES.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    Ok(spec.expect("registry entries are valid"))
}

/// Every registered objective, in registry order.
pub fn registry() -> Vec<ObjectiveSpec> {
    OBJECTIVE_NAMES
        .iter()
        .map(|n| lookup(n).expect("registered"))
        .collect()
}
