use std::io::Write;
use std::process::ExitCode;

use bosonbudget::config::{Cli, RunConfig};
use bosonbudget::error::{CliError, EXIT_USAGE};
use bosonbudget::run_to_destination;
use clap::error::ErrorKind;
use clap::Parser;

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json_line());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            let err = CliError::usage(first.to_string());
            debug_assert_eq!(err.exit_code(), EXIT_USAGE);
            return fail(&err);
        }
    };
    let result = RunConfig::resolve(cli).and_then(|cfg| run_to_destination(&cfg));
    match result {
        Ok(Some(text)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_USAGE as u8);
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
