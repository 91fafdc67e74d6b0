use thiserror::Error;

/// Errors raised by the optimizers and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid objective: {0}")]
    InvalidObjective(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown objective `{name}`; valid names: {}", valid.join(", "))]
    UnknownObjective { name: String, valid: Vec<String> },

    #[error("objective returned non-finite value {value} for {team} at point {point:?}")]
    NonFiniteEvaluation {
        team: String,
        point: Vec<f64>,
        value: f64,
    },

    #[error("run {index} failed: {source}")]
    Run {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot summarize an empty result set")]
    EmptyResults,
}

pub type Result<T> = std::result::Result<T, Error>;
