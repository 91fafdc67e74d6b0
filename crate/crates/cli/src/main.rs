use std::io;
use std::process::ExitCode;

use slo_cli::{execute, parse_args};

fn main() -> ExitCode {
    let invocation = match parse_args(std::env::args_os()) {
        Ok(i) => i,
        Err(e) => {
            e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = io::stdout();
    match execute(&invocation, &mut stdout.lock()) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
