mod config;
mod export;
mod run;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig};
use run::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli)
        .map_err(anyhow::Error::from)
        .and_then(|cfg| run::run(&cfg));
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::ValidationFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(run::exit_code(&err))
        }
    }
}
