use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use infobound_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("infobound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
