//! `btforge` command-line tool.

use std::process::ExitCode;

use clap::Parser;

mod args;
mod error;
mod io;
mod run;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("btforge: {}", msg.lines().next().unwrap_or("usage error").trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    let config = match io::RunConfig::from_cli(&cli) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("btforge: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run::execute(&cli, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("btforge {}: {e}", config.command);
            ExitCode::from(e.exit_code())
        }
    }
}
