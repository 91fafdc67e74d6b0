use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use slo_core::harness::{
    check_acceptance, check_trace_shape, run_experiment, summarize, AcceptanceReport,
    AlgorithmConfig, ExperimentConfig, SummaryTable, Tolerances,
};
use slo_core::{lookup, registry, Algorithm, ObjectiveSpec, RunResult, SloConfig, SloRun};

use crate::args::CliInvocation;
use crate::output::{emit_snapshot, emit_summary_json, emit_trace_csv, SummaryDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] slo_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot write to standard output: {0}")]
    Output(#[from] io::Error),
}

/// How a completed command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// `--check` was requested and at least one criterion failed.
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::CheckFailed => 1,
        }
    }
}

fn write_file<F>(path: &Path, emit: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let wrap = |source| CliError::File {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
    emit(&mut w).and_then(|_| w.flush()).map_err(wrap)
}

fn point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|v| format!("{v:.6}")).collect();
    format!("({})", parts.join(", "))
}

/// Tolerances `--check` applies: the benchmark table for SLO, the looser
/// comparison tolerance for the baselines.
pub fn check_tolerances(algorithm: Algorithm, objective: &str) -> Option<Tolerances> {
    match algorithm {
        Algorithm::Slo => Tolerances::table(objective),
        Algorithm::Pso | Algorithm::Ga => Some(Tolerances::baseline()),
    }
}

fn check(
    summary: &SummaryTable,
    spec: &ObjectiveSpec,
    results: &[RunResult],
) -> Option<AcceptanceReport> {
    let tol = check_tolerances(summary.algorithm, spec.name())?;
    let mut report = check_acceptance(summary, spec, &tol);
    if summary.algorithm == Algorithm::Slo {
        report
            .criteria
            .extend(check_trace_shape(results, spec, tol.value).criteria);
    }
    Some(report)
}

fn print_table(out: &mut dyn Write, summary: &SummaryTable, base_seed: u64) -> io::Result<()> {
    writeln!(
        out,
        "{} on {}, {} runs from seed {base_seed}",
        summary.algorithm,
        summary.objective,
        summary.rows.len()
    )?;
    writeln!(out, "{:>4} {:>20} {:>22}  best point", "run", "seed", "f")?;
    for r in &summary.rows {
        writeln!(
            out,
            "{:>4} {:>20} {:>22.12}  {}",
            r.run,
            r.seed,
            r.best_raw,
            point(&r.best_point)
        )?;
    }
    let a = &summary.raw;
    writeln!(
        out,
        "best {:.12}  median {:.12}  worst {:.12}  mean {:.12}  stddev {:.3e}",
        a.best, a.median, a.worst, a.mean, a.stddev
    )
}

fn print_report(out: &mut dyn Write, report: &AcceptanceReport) -> io::Result<()> {
    for c in &report.criteria {
        writeln!(
            out,
            "{}  {}: measured {:e}, threshold {:e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.threshold
        )?;
    }
    Ok(())
}

fn run_one(
    out: &mut dyn Write,
    objective: &str,
    algorithm: &AlgorithmConfig,
    trace: Option<&Path>,
    summary: Option<&Path>,
) -> Result<Outcome, CliError> {
    let spec = lookup(objective)?;
    let result = algorithm.run(&spec)?;
    if let Some(path) = trace {
        write_file(path, |w| emit_trace_csv(&result.trace, w))?;
    }
    if let Some(path) = summary {
        let table = summarize(&spec, algorithm.algorithm(), std::slice::from_ref(&result))?;
        let doc = SummaryDocument::new(&table, result.seed, *algorithm, None);
        write_file(path, |w| emit_summary_json(&doc, w))?;
    }
    writeln!(
        out,
        "{} on {} (seed {}): f = {} at {} after {} evaluations",
        algorithm.algorithm(),
        spec.name(),
        result.seed,
        result.best_raw,
        point(&result.best_point),
        result.evaluations_used
    )?;
    Ok(Outcome::Success)
}

fn table(
    out: &mut dyn Write,
    experiment: &ExperimentConfig,
    summary_path: Option<&Path>,
    want_check: bool,
) -> Result<Outcome, CliError> {
    let spec = lookup(&experiment.objective_name)?;
    let results = run_experiment(experiment)?;
    let summary = summarize(&spec, experiment.algorithm.algorithm(), &results)?;
    let report = if want_check {
        check(&summary, &spec, &results)
    } else {
        None
    };
    print_table(out, &summary, experiment.base_seed)?;
    if let Some(path) = summary_path {
        let doc = SummaryDocument::new(
            &summary,
            experiment.base_seed,
            experiment.algorithm,
            report.as_ref(),
        );
        write_file(path, |w| emit_summary_json(&doc, w))?;
    }
    match report {
        Some(r) => {
            print_report(out, &r)?;
            Ok(if r.passed() {
                Outcome::Success
            } else {
                Outcome::CheckFailed
            })
        }
        None => Ok(Outcome::Success),
    }
}

fn snapshot(
    out: &mut dyn Write,
    objective: &str,
    config: SloConfig,
    before: Option<&Path>,
    after: Option<&Path>,
    trace: Option<&Path>,
) -> Result<Outcome, CliError> {
    let spec = lookup(objective)?;
    let mut run = SloRun::new(config, &spec)?;
    if let Some(path) = before {
        write_file(path, |w| emit_snapshot(run.league(), w))?;
    }
    run.run()?;
    if let Some(path) = after {
        write_file(path, |w| emit_snapshot(run.league(), w))?;
    }
    if let Some(path) = trace {
        write_file(path, |w| emit_trace_csv(run.trace(), w))?;
    }
    let result = run.result();
    writeln!(
        out,
        "slo on {} (seed {}): f = {} at {} after {} seasons",
        spec.name(),
        config.seed,
        result.best_raw,
        point(&result.best_point),
        config.seasons
    )?;
    Ok(Outcome::Success)
}

fn list_objectives(out: &mut dyn Write) -> Result<Outcome, CliError> {
    for spec in registry() {
        let bounds: Vec<String> = spec
            .bounds()
            .iter()
            .map(|b| format!("[{}, {}]", b.lower, b.upper))
            .collect();
        let optima: Vec<String> = spec
            .known_optimum_points()
            .iter()
            .map(|p| point(p))
            .collect();
        writeln!(
            out,
            "{}\t{}\tf* = {}\tat {}",
            spec.name(),
            bounds.join(" x "),
            spec.known_optimum_value(),
            optima.join(", ")
        )?;
    }
    Ok(Outcome::Success)
}

/// Executes a parsed invocation, writing the human-readable report to `out`.
pub fn execute(invocation: &CliInvocation, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match invocation {
        CliInvocation::Run {
            objective,
            algorithm,
            trace,
            summary,
        } => run_one(
            out,
            objective,
            algorithm,
            trace.as_deref(),
            summary.as_deref(),
        ),
        CliInvocation::Table {
            experiment,
            summary,
            check,
        } => table(out, experiment, summary.as_deref(), *check),
        CliInvocation::Snapshot {
            objective,
            config,
            before,
            after,
            trace,
        } => snapshot(
            out,
            objective,
            *config,
            before.as_deref(),
            after.as_deref(),
            trace.as_deref(),
        ),
        CliInvocation::ListObjectives => list_objectives(out),
    }
}
