mod args;
mod commands;
mod error;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn run(cli: Cli) -> commands::CmdResult {
    let format = cli.format;
    if let Command::Rules(rules) = cli.command {
        return commands::rules(rules, format);
    }
    let cfg = commands::load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Ingest(a) => commands::ingest(a, cfg, format),
        Command::Evaluate(a) => commands::evaluate(a, cfg, format),
        Command::Compare(a) => commands::compare(a, cfg, format),
        Command::Surface(a) => commands::surface(a, cfg, format),
        Command::Rules(_) => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    // clap exits with status 2 on malformed arguments.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
