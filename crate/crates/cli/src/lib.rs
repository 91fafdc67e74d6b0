//! Command-line front end: argument parsing, command execution, and the
//! CSV/JSON output formats.

mod args;
mod commands;
pub mod output;

pub use args::{parse_args, CliInvocation, UsageError};
pub use commands::{check_tolerances, execute, CliError, Outcome};
pub use output::{emit_snapshot, emit_summary_json, emit_trace_csv, SummaryDocument};
