use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tflat_cli::{run, Args, SessionSpec};

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&SessionSpec::from(args)) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.report.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("tflat: {e}");
            ExitCode::from(2)
        }
    }
}
