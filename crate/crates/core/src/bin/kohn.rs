use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::Parser;
use kohn_core::cli::{run, Cli, ExitStatus};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { ExitStatus::InputError.code() } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match panic::catch_unwind(|| run(&cli)) {
        Ok(outcome) => {
            // A closed pipe downstream is not a failure of the computation.
            let _ = writeln!(std::io::stdout(), "{}", outcome.render(cli.format));
            ExitCode::from(outcome.status.code() as u8)
        }
        Err(_) => ExitCode::from(ExitStatus::Internal.code() as u8),
    }
}
