mod commands;
mod config;

use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};

use crate::config::ConfigError;

/// Knowledge-based all-words word sense disambiguation over WordNet.
#[derive(Debug, Parser)]
#[command(name = "scsmm", version, about)]
struct Cli {
    /// More logging (-v info, -vv debug). RUST_LOG overrides this.
    #[arg(short, long, action = ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Predict a sense key for every target of a dataset.
    Disambiguate(commands::disambiguate::Args),
    /// Score a prediction file against gold keys.
    Score(commands::score::Args),
    /// Print corpus statistics of a dataset.
    Stats(commands::stats::Args),
    /// Print similarities between the senses of two words or two sense keys.
    Sim(commands::sim::Args),
}

/// 2 for problems with the content of an input file, 1 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<scsmm_core::Error>() {
            if e.is_input_format() {
                return 2;
            }
        }
        if let Some(ConfigError::Syntax { .. } | ConfigError::Value { .. }) = cause.downcast_ref::<ConfigError>() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    let result = match cli.command {
        Command::Disambiguate(args) => commands::disambiguate::run(args),
        Command::Score(args) => commands::score::run(args),
        Command::Stats(args) => commands::stats::run(args),
        Command::Sim(args) => commands::sim::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
