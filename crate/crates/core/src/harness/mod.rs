//! Multi-run experiments: seeded repetitions of one optimizer on one
//! benchmark, table-style summaries, and tolerance checks.

mod acceptance;
mod experiment;
mod summary;

pub use acceptance::{
    check_acceptance, check_budget_parity, check_trace_shape, AcceptanceReport, CriterionResult,
    Tolerances,
};
pub use experiment::{run_experiment, Algorithm, AlgorithmConfig, ExperimentConfig};
pub use summary::{median, summarize, Aggregates, RunRow, SummaryTable};
