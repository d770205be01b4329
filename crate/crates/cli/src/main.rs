mod args;
mod commands;
mod config;
mod exit;
mod verify;

use clap::Parser;

use args::{Cli, Command};
use commands::Context;
use config::Config;
use exit::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(threads) = cli.threads.or(config.threads) {
        if threads == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    let ctx = Context { config };
    match &cli.command {
        Command::Relation(a) => commands::relation(a, &ctx),
        Command::Locus(a) => commands::locus(a, &ctx),
        Command::Scan(a) => commands::scan(a, &ctx),
        Command::Verify(a) => commands::verify(a, &ctx),
        Command::Figures(a) => commands::figures(a, &ctx),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code as i32);
    }
}
