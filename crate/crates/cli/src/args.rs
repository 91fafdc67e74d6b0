use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use slo_core::harness::{AlgorithmConfig, ExperimentConfig};
use slo_core::{lookup, Algorithm, Error as CoreError, GaConfig, PsoConfig, SloConfig};

#[derive(Debug, Parser)]
#[command(
    name = "slo",
    version,
    about = "Soccer League Optimization experiments on the G1-G4 benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one optimization and report its best point.
    Run(RunArgs),
    /// Run several seeded optimizations and summarize them.
    Table(TableArgs),
    /// Write SLO league snapshots before and after a run.
    Snapshot(SnapshotArgs),
    /// List the benchmark objectives.
    ListObjectives,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Slo,
    Pso,
    Ga,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Slo => Algorithm::Slo,
            AlgoArg::Pso => Algorithm::Pso,
            AlgoArg::Ga => Algorithm::Ga,
        }
    }
}

#[derive(Debug, Args)]
struct SloArgs {
    /// Number of wealthiest teams [default: 30]
    #[arg(long)]
    na: Option<usize>,
    /// Number of regular teams [default: 30]
    #[arg(long)]
    nb: Option<usize>,
    /// Number of weakest teams [default: 30]
    #[arg(long)]
    nc: Option<usize>,
    /// Number of seasons [default: 100]
    #[arg(long)]
    seasons: Option<usize>,
    /// Training step as a fraction of each dimension's width [default: 0.05]
    #[arg(long)]
    alpha: Option<f64>,
}

impl SloArgs {
    fn given(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        for (flag, set) in [
            ("--na", self.na.is_some()),
            ("--nb", self.nb.is_some()),
            ("--nc", self.nc.is_some()),
            ("--seasons", self.seasons.is_some()),
            ("--alpha", self.alpha.is_some()),
        ] {
            if set {
                flags.push(flag);
            }
        }
        flags
    }

    fn config(&self, seed: u64) -> SloConfig {
        let d = SloConfig::default();
        SloConfig {
            n_a: self.na.unwrap_or(d.n_a),
            n_b: self.nb.unwrap_or(d.n_b),
            n_c: self.nc.unwrap_or(d.n_c),
            seasons: self.seasons.unwrap_or(d.seasons),
            alpha: self.alpha.unwrap_or(d.alpha),
            seed,
        }
    }
}

#[derive(Debug, Args)]
struct BaselineArgs {
    /// PSO swarm size or GA population [default: 90]
    #[arg(long)]
    swarm: Option<usize>,
    /// PSO iterations or GA generations [default: 100]
    #[arg(long)]
    iters: Option<usize>,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Benchmark name (g1, g2, g3 or g4)
    #[arg(long)]
    objective: String,
    #[arg(long, value_enum, default_value_t = AlgoArg::Slo)]
    algo: AlgoArg,
    #[command(flatten)]
    slo: SloArgs,
    #[command(flatten)]
    baseline: BaselineArgs,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the per-season trace as CSV
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write a one-run summary as JSON
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Base seed; run i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    runs: usize,
    /// Write the summary as JSON
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Check the results against the acceptance tolerances; exit 1 on failure
    #[arg(long)]
    check: bool,
}

#[derive(Debug, Args)]
struct SnapshotArgs {
    /// Benchmark name (g1, g2, g3 or g4)
    #[arg(long)]
    objective: String,
    #[command(flatten)]
    slo: SloArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// League positions right after initialization, as CSV
    #[arg(long)]
    snapshot_before: Option<PathBuf>,
    /// League positions after the last season, as CSV
    #[arg(long)]
    snapshot_after: Option<PathBuf>,
    /// Write the per-season trace as CSV
    #[arg(long)]
    trace: Option<PathBuf>,
}

/// A validated command line.
#[derive(Debug, Clone, PartialEq)]
pub enum CliInvocation {
    Run {
        objective: String,
        algorithm: AlgorithmConfig,
        trace: Option<PathBuf>,
        summary: Option<PathBuf>,
    },
    Table {
        experiment: ExperimentConfig,
        summary: Option<PathBuf>,
        check: bool,
    },
    Snapshot {
        objective: String,
        config: SloConfig,
        before: Option<PathBuf>,
        after: Option<PathBuf>,
        trace: Option<PathBuf>,
    },
    ListObjectives,
}

/// Rejected command line, including `--help` and `--version` requests.
#[derive(Debug)]
pub struct UsageError(clap::Error);

impl UsageError {
    fn new(kind: ErrorKind, message: impl fmt::Display) -> Self {
        Self(Cli::command().error(kind, message))
    }

    /// 0 for help and version output, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        self.0.exit_code()
    }

    pub fn kind(&self) -> ErrorKind {
        self.0.kind()
    }

    /// Prints to stdout or stderr as appropriate.
    pub fn print(&self) {
        let _ = self.0.print();
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn checked_objective(name: &str) -> Result<String, UsageError> {
    match lookup(name) {
        Ok(spec) => Ok(spec.name().to_string()),
        Err(e) => Err(UsageError::new(
            ErrorKind::InvalidValue,
            format!("--objective: {e}"),
        )),
    }
}

fn invalid_config(e: CoreError) -> UsageError {
    UsageError::new(ErrorKind::ValueValidation, e)
}

fn algorithm_config(problem: &ProblemArgs, seed: u64) -> Result<AlgorithmConfig, UsageError> {
    let conflicts = match problem.algo {
        AlgoArg::Slo => {
            let mut flags = Vec::new();
            if problem.baseline.swarm.is_some() {
                flags.push("--swarm");
            }
            if problem.baseline.iters.is_some() {
                flags.push("--iters");
            }
            flags
        }
        AlgoArg::Pso | AlgoArg::Ga => problem.slo.given(),
    };
    if let Some(flag) = conflicts.first() {
        return Err(UsageError::new(
            ErrorKind::ArgumentConflict,
            format!(
                "{flag} cannot be used with --algo {}",
                Algorithm::from(problem.algo)
            ),
        ));
    }
    let config = match problem.algo {
        AlgoArg::Slo => {
            let c = problem.slo.config(seed);
            c.validate().map_err(invalid_config)?;
            AlgorithmConfig::Slo(c)
        }
        AlgoArg::Pso => {
            let d = PsoConfig::default();
            let c = PsoConfig {
                swarm_size: problem.baseline.swarm.unwrap_or(d.swarm_size),
                iterations: problem.baseline.iters.unwrap_or(d.iterations),
                seed,
                ..d
            };
            c.validate().map_err(invalid_config)?;
            AlgorithmConfig::Pso(c)
        }
        AlgoArg::Ga => {
            let d = GaConfig::default();
            let c = GaConfig {
                population: problem.baseline.swarm.unwrap_or(d.population),
                generations: problem.baseline.iters.unwrap_or(d.generations),
                seed,
                ..d
            };
            c.validate().map_err(invalid_config)?;
            AlgorithmConfig::Ga(c)
        }
    };
    Ok(config)
}

/// Parses `argv` (program name first) into a validated invocation.
pub fn parse_args<I, T>(argv: I) -> Result<CliInvocation, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(UsageError)?;
    match cli.command {
        Command::Run(a) => Ok(CliInvocation::Run {
            objective: checked_objective(&a.problem.objective)?,
            algorithm: algorithm_config(&a.problem, a.seed)?,
            trace: a.trace,
            summary: a.summary,
        }),
        Command::Table(a) => {
            if a.runs == 0 {
                return Err(UsageError::new(
                    ErrorKind::ValueValidation,
                    "--runs must be at least 1",
                ));
            }
            Ok(CliInvocation::Table {
                experiment: ExperimentConfig {
                    objective_name: checked_objective(&a.problem.objective)?,
                    runs: a.runs,
                    base_seed: a.seed,
                    algorithm: algorithm_config(&a.problem, a.seed)?,
                },
                summary: a.summary,
                check: a.check,
            })
        }
        Command::Snapshot(a) => {
            if a.snapshot_before.is_none() && a.snapshot_after.is_none() {
                return Err(UsageError::new(
                    ErrorKind::MissingRequiredArgument,
                    "snapshot needs --snapshot-before and/or --snapshot-after",
                ));
            }
            let config = a.slo.config(a.seed);
            config.validate().map_err(invalid_config)?;
            Ok(CliInvocation::Snapshot {
                objective: checked_objective(&a.objective)?,
                config,
                before: a.snapshot_before,
                after: a.snapshot_after,
                trace: a.trace,
            })
        }
        Command::ListObjectives => Ok(CliInvocation::ListObjectives),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Result<CliInvocation, UsageError> {
        parse_args(std::iter::once("slo").chain(line.split_whitespace()))
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn run_defaults() {
        match parse("run --objective g1 --seed 42").unwrap() {
            CliInvocation::Run {
                objective,
                algorithm: AlgorithmConfig::Slo(c),
                trace: None,
                summary: None,
            } => {
                assert_eq!(objective, "g1");
                assert_eq!(
                    c,
                    SloConfig {
                        seed: 42,
                        ..SloConfig::default()
                    }
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pso_comparison_setup() {
        match parse("run --objective g3 --algo pso --swarm 90 --iters 100").unwrap() {
            CliInvocation::Run {
                algorithm: AlgorithmConfig::Pso(c),
                ..
            } => {
                assert_eq!((c.swarm_size, c.iterations), (90, 100));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_objective_lists_valid_names() {
        let err = parse("run --objective g9").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("--objective"), "{msg}");
        for n in ["g1", "g2", "g3", "g4"] {
            assert!(msg.contains(n), "{msg}");
        }
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn malformed_and_unknown_flags() {
        for line in [
            "run --objective g1 --seed abc",
            "run --objective g1 --alpha x",
            "run --objective g1 --bogus 1",
            "run --objective g1 --check",
            "run --seed 1",
            "table --objective g1 --runs -3",
            "frobnicate",
        ] {
            let err = parse(line).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{line}");
        }
    }

    #[test]
    fn conflicting_flags_name_the_flag() {
        let err = parse("run --objective g1 --algo pso --seasons 10").unwrap_err();
        assert_eq!(err.kind(), ErrorKind::ArgumentConflict);
        assert!(err.to_string().contains("--seasons"));
        let err = parse("table --objective g1 --swarm 10").unwrap_err();
        assert!(err.to_string().contains("--swarm"));
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        for line in [
            "run --objective g1 --alpha 0",
            "run --objective g1 --na 0",
            "run --objective g1 --algo ga --swarm 1",
            "table --objective g1 --runs 0",
            "snapshot --objective g1",
        ] {
            assert!(parse(line).is_err(), "{line}");
        }
    }

    #[test]
    fn table_and_snapshot() {
        match parse("table --objective G2 --runs 3 --seed 9 --check").unwrap() {
            CliInvocation::Table {
                experiment, check, ..
            } => {
                assert!(check);
                assert_eq!(experiment.objective_name, "g2");
                assert_eq!((experiment.runs, experiment.base_seed), (3, 9));
            }
            other => panic!("{other:?}"),
        }
        match parse("snapshot --objective g4 --na 5 --snapshot-before a.csv").unwrap() {
            CliInvocation::Snapshot { config, before, .. } => {
                assert_eq!(config.n_a, 5);
                assert_eq!(before, Some(PathBuf::from("a.csv")));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse("list-objectives").unwrap(),
            CliInvocation::ListObjectives
        );
    }

    #[test]
    fn help_is_not_a_failure() {
        assert_eq!(parse("--help").unwrap_err().exit_code(), 0);
    }
}
