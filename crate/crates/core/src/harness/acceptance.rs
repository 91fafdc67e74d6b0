//! Pass/fail checks of multi-run results against per-benchmark tolerances.
//! Failures are report entries, never errors.

use serde::{Deserialize, Serialize};

use super::summary::{median, SummaryTable};
use crate::objectives::ObjectiveSpec;
use crate::trace::RunResult;

/// Thresholds applied to the median over runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on `|best_raw - known optimum value|`.
    pub value: f64,
    /// Bound on the distance from the best point to the nearest optimum.
    pub distance: Option<f64>,
}

impl Tolerances {
    /// Tolerances for the five-run benchmark experiments.
    pub fn table(objective: &str) -> Option<Self> {
        let (value, distance) = match objective.to_ascii_lowercase().as_str() {
            "g1" => (5e-3, 0.15),
            "g2" => (1e-2, 0.05),
            "g3" => (1e-2, 0.1),
            "g4" => (2e-3, 0.05),
            _ => return None,
        };
        Some(Self {
            value,
            distance: Some(distance),
        })
    }

    /// Value-only tolerance for the PSO/GA comparison runs.
    pub fn baseline() -> Self {
        Self {
            value: 5e-2,
            distance: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CriterionResult {
    /// Passes when `measured <= threshold`.
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            passed: measured <= threshold,
        }
    }

    /// Passes when `measured >= threshold`.
    pub fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            passed: measured >= threshold,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, c: CriterionResult) {
        self.criteria.push(c);
    }
}

/// Median value error and median distance to the nearest known optimum.
pub fn check_acceptance(
    summary: &SummaryTable,
    spec: &ObjectiveSpec,
    tolerances: &Tolerances,
) -> AcceptanceReport {
    let mut report = AcceptanceReport::default();
    let errors: Vec<f64> = summary
        .rows
        .iter()
        .map(|r| (r.best_raw - spec.known_optimum_value()).abs())
        .collect();
    let name = format!("{} {}", summary.algorithm, spec.name());
    report.push(CriterionResult::at_most(
        format!("{name}: median |f - f*|"),
        median(&errors).unwrap_or(f64::INFINITY),
        tolerances.value,
    ));
    if let Some(limit) = tolerances.distance {
        let distances: Vec<f64> = summary
            .rows
            .iter()
            .map(|r| spec.distance_to_nearest_optimum(&r.best_point))
            .collect();
        report.push(CriterionResult::at_most(
            format!("{name}: median distance to nearest optimum"),
            median(&distances).unwrap_or(f64::INFINITY),
            limit,
        ));
    }
    report
}

/// Convergence-trace shape of SLO runs: the wealthiest-tier best never
/// drops, its final value is within `value_tolerance` of the optimum (median
/// over runs), and the weakest-tier best ends no lower than it started
/// (median over runs).
pub fn check_trace_shape(
    results: &[RunResult],
    spec: &ObjectiveSpec,
    value_tolerance: f64,
) -> AcceptanceReport {
    let mut report = AcceptanceReport::default();
    let name = spec.name();

    let drops = results
        .iter()
        .flat_map(|r| {
            r.trace.windows(2).filter_map(|w| {
                let (a, b) = (w[0].best_wealthy?, w[1].best_wealthy?);
                (b < a).then_some(a - b)
            })
        })
        .count();
    report.push(CriterionResult::at_most(
        format!("{name}: wealthiest-tier best decreases"),
        drops as f64,
        0.0,
    ));

    let final_errors: Vec<f64> = results
        .iter()
        .filter_map(|r| r.trace.last()?.best_wealthy)
        .map(|s| (spec.to_raw(s) - spec.known_optimum_value()).abs())
        .collect();
    report.push(CriterionResult::at_most(
        format!("{name}: median final wealthiest-tier |f - f*|"),
        median(&final_errors).unwrap_or(f64::INFINITY),
        value_tolerance,
    ));

    let weakest_gain: Vec<f64> = results
        .iter()
        .filter_map(|r| Some(r.trace.last()?.best_weakest? - r.trace.first()?.best_weakest?))
        .collect();
    report.push(CriterionResult::at_least(
        format!("{name}: median weakest-tier best gain"),
        median(&weakest_gain).unwrap_or(f64::NEG_INFINITY),
        0.0,
    ));
    report
}

/// Largest over smallest evaluation count must not exceed `max_ratio`.
pub fn check_budget_parity(label: &str, evaluations: &[u64], max_ratio: f64) -> CriterionResult {
    let lo = evaluations.iter().copied().min().unwrap_or(0) as f64;
    let hi = evaluations.iter().copied().max().unwrap_or(0) as f64;
    let ratio = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    CriterionResult::at_most(
        format!("{label}: evaluation budget ratio"),
        ratio,
        max_ratio,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::experiment::Algorithm;
    use crate::harness::summary::summarize;
    use crate::objectives::lookup;
    use crate::trace::SeasonRecord;

    fn run_at(point: Vec<f64>, raw: f64, obj: &ObjectiveSpec) -> RunResult {
        RunResult {
            seed: 0,
            best_score: obj.to_score(raw),
            best_raw: raw,
            best_point: point,
            trace: vec![],
            evaluations_used: 1,
        }
    }

    #[test]
    fn g2_small_error_passes() {
        let g2 = lookup("g2").unwrap();
        let rs: Vec<_> = [3.0001, 3.0002, 3.0011, 3.0017, 3.0041]
            .iter()
            .map(|&raw| run_at(vec![0.0, -1.0], raw, &g2))
            .collect();
        let t = summarize(&g2, Algorithm::Slo, &rs).unwrap();
        assert_eq!(t.raw.median, 3.0011);
        let tol = Tolerances {
            value: 5e-3,
            distance: Some(0.05),
        };
        let report = check_acceptance(&t, &g2, &tol);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn g1_large_error_fails() {
        let g1 = lookup("g1").unwrap();
        let rs: Vec<_> = (0..5).map(|_| run_at(vec![3.0, 0.5], 0.2, &g1)).collect();
        let t = summarize(&g1, Algorithm::Slo, &rs).unwrap();
        let tol = Tolerances {
            value: 5e-3,
            distance: None,
        };
        let report = check_acceptance(&t, &g1, &tol);
        assert!(!report.passed());
        assert_eq!(report.criteria.len(), 1);
    }

    #[test]
    fn g4_distance_uses_nearest_optimum() {
        let g4 = lookup("g4").unwrap();
        let points = [
            vec![-0.0899, 0.7128],
            vec![0.0886, -0.7127],
            vec![-0.0911, 0.7136],
            vec![0.0888, -0.7120],
            vec![-0.0917, 0.7136],
        ];
        let rs: Vec<_> = points
            .iter()
            .map(|p| run_at(p.clone(), g4.eval(p), &g4))
            .collect();
        let t = summarize(&g4, Algorithm::Slo, &rs).unwrap();
        let report = check_acceptance(&t, &g4, &Tolerances::table("g4").unwrap());
        assert!(report.passed(), "{report:?}");
        // without the mirrored optimum, half the runs would be ~1.43 away
        assert!(report.criteria[1].measured < 0.01);
    }

    #[test]
    fn trace_shape_flags_drops() {
        let g1 = lookup("g1").unwrap();
        let rec = |season, w: f64, k: f64| SeasonRecord {
            season,
            best_wealthy: Some(w),
            best_regular: Some(w),
            best_weakest: Some(k),
            global_best: w,
        };
        let mut r = run_at(vec![3.0, 0.5], 0.0, &g1);
        r.trace = vec![rec(1, -1.0, -5.0), rec(2, -0.5, -4.0), rec(3, -1e-4, -3.0)];
        let ok = check_trace_shape(&[r.clone()], &g1, 5e-3);
        assert!(ok.passed(), "{ok:?}");

        r.trace[1].best_wealthy = Some(-2.0);
        r.trace[2].best_weakest = Some(-9.0);
        let bad = check_trace_shape(&[r], &g1, 5e-3);
        assert!(!bad.criteria[0].passed);
        assert!(bad.criteria[1].passed);
        assert!(!bad.criteria[2].passed);
    }

    #[test]
    fn budget_ratio() {
        assert!(check_budget_parity("x", &[9090, 9000, 17000], 2.0).passed);
        assert!(!check_budget_parity("x", &[9000, 18001], 2.0).passed);
    }
}
