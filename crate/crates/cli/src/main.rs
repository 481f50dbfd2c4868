use std::process::ExitCode;

use clap::Parser;

use pytuple_cli::commands::exit_code;
use pytuple_cli::{execute, exit, Cli, BUDGET_ENV};
use pytuple_core::FactorBudget;

fn budget_from_env() -> Result<FactorBudget, String> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(FactorBudget::new)
            .map_err(|_| format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(FactorBudget::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    match execute(&cli, budget) {
        Ok(outcome) => {
            print!("{}", outcome.document.render(cli.format));
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
