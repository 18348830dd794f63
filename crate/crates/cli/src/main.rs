use std::io::Write;
use std::process::ExitCode;

use alftop_cli::{run, Cli, Report, EXIT_INPUT, EXIT_OK};
use clap::Parser;
use serde_json::json;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK } as u8);
        }
    };
    let echo = &argv[1..];
    let report = run(&cli, echo).unwrap_or_else(|e| {
        eprintln!("alftop: {e}");
        Report {
            command: echo.to_vec(),
            inputs: Vec::new(),
            results: json!({ "error": e.to_string() }),
            exit_status: EXIT_INPUT,
        }
    });
    let mut out = std::io::stdout().lock();
    if out.write_all(report.to_json().as_bytes()).is_err() {
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(report.exit_status as u8)
}
