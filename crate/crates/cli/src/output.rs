//! File formats: per-season traces and league snapshots as CSV, experiment
//! summaries as JSON. Reals are written in their shortest form that parses
//! back to the same `f64`.

use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};
use slo_core::harness::{AcceptanceReport, Aggregates, AlgorithmConfig, RunRow, SummaryTable};
use slo_core::{League, SeasonRecord, Tier};

pub const TRACE_HEADER: [&str; 5] = [
    "season",
    "best_wealthy",
    "best_regular",
    "best_weakest",
    "global_best",
];

/// One row per season. Tier columns that a run does not track are empty.
pub fn emit_trace_csv<W: Write>(trace: &[SeasonRecord], destination: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(destination);
    w.write_record(TRACE_HEADER)?;
    for r in trace {
        w.serialize(r)?;
    }
    w.flush()
}

pub fn read_trace_csv<R: Read>(source: R) -> Result<Vec<SeasonRecord>, csv::Error> {
    let mut r = csv::Reader::from_reader(source);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != TRACE_HEADER {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("unexpected trace header {header:?}"),
        )
        .into());
    }
    r.deserialize().collect()
}

/// `tier,team_index,dim_0,...,dim_{D-1},score`, tiers in rank order.
pub fn emit_snapshot<W: Write>(league: &League, destination: W) -> io::Result<()> {
    let dimension = league
        .team_ids()
        .first()
        .map_or(0, |id| league.team(*id).values.len());
    let mut w = csv::Writer::from_writer(destination);
    let mut header = vec!["tier".to_string(), "team_index".to_string()];
    header.extend((0..dimension).map(|d| format!("dim_{d}")));
    header.push("score".to_string());
    w.write_record(&header)?;
    for (id, team) in league.teams() {
        let mut row = vec![id.tier.as_str().to_string(), id.index.to_string()];
        row.extend(team.values.iter().map(|v| v.to_string()));
        row.push(team.score.to_string());
        w.write_record(&row)?;
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub tier: Tier,
    pub team_index: usize,
    pub values: Vec<f64>,
    pub score: f64,
}

pub fn read_snapshot<R: Read>(source: R) -> Result<Vec<SnapshotRow>, csv::Error> {
    let bad =
        |msg: String| -> csv::Error { io::Error::new(io::ErrorKind::InvalidData, msg).into() };
    let mut r = csv::Reader::from_reader(source);
    let width = r.headers()?.len();
    if width < 4 {
        return Err(bad(format!("snapshot header has only {width} columns")));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let tier = match &record[0] {
            "wealthiest" => Tier::Wealthiest,
            "regular" => Tier::Regular,
            "weakest" => Tier::Weakest,
            other => return Err(bad(format!("unknown tier `{other}`"))),
        };
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("`{s}`: {e}")));
        let team_index = record[1]
            .parse()
            .map_err(|e| bad(format!("`{}`: {e}", &record[1])))?;
        let values = (2..width - 1)
            .map(|i| num(&record[i]))
            .collect::<Result<_, _>>()?;
        rows.push(SnapshotRow {
            tier,
            team_index,
            values,
            score: num(&record[width - 1])?,
        });
    }
    Ok(rows)
}

/// Serialized form of a summary; see `schema/summary.schema.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryDocument {
    pub objective: String,
    pub algorithm: String,
    pub base_seed: u64,
    pub config: AlgorithmConfig,
    pub runs: Vec<RunRow>,
    /// Over raw objective values.
    pub aggregates: Aggregates,
    /// Over maximization scores.
    pub score_aggregates: Aggregates,
    pub best_point: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub acceptance: Option<AcceptanceDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceDocument {
    pub passed: bool,
    #[serde(flatten)]
    pub report: AcceptanceReport,
}

impl SummaryDocument {
    pub fn new(
        summary: &SummaryTable,
        base_seed: u64,
        config: AlgorithmConfig,
        acceptance: Option<&AcceptanceReport>,
    ) -> Self {
        Self {
            objective: summary.objective.clone(),
            algorithm: summary.algorithm.to_string(),
            base_seed,
            config,
            runs: summary.rows.clone(),
            aggregates: summary.raw,
            score_aggregates: summary.score,
            best_point: summary.best_point.clone(),
            acceptance: acceptance.map(|r| AcceptanceDocument {
                passed: r.passed(),
                report: r.clone(),
            }),
        }
    }
}

pub fn emit_summary_json<W: Write>(
    document: &SummaryDocument,
    mut destination: W,
) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut destination, document)?;
    destination.write_all(b"\n")?;
    destination.flush()
}
