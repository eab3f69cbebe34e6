use std::process::ExitCode;

use clap::Parser;
use ncgasket_cli::app::{run, Cli, CliError, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) | CliError::Io(_) | CliError::Algebra(_) | CliError::Csv(_) => {
                    ExitCode::from(2)
                }
            }
        }
    }
}
