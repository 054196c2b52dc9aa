mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Outcome;
use config::RunConfig;

/// Discrete-choice estimation, simulation, validation and analysis.
#[derive(Parser, Debug)]
#[command(name = "choicekit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate a utility or regret model and write its result files.
    Estimate(Invocation),
    /// Generate a design, simulate choices and write the dataset.
    Simulate(Invocation),
    /// K-fold estimate-then-predict validation scored by MAPE.
    Validate(Invocation),
    /// Willingness to pay, elasticities and model comparison from result files.
    Analyze(Invocation),
}

#[derive(Args, Debug)]
struct Invocation {
    /// TOML file with any of the keys below; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: RunConfig,
}

impl Invocation {
    fn resolve(&self) -> Result<RunConfig, String> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(base.overridden_by(&self.flags))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, invocation) = match &cli.command {
        Command::Estimate(i) => ("estimate", i),
        Command::Simulate(i) => ("simulate", i),
        Command::Validate(i) => ("validate", i),
        Command::Analyze(i) => ("analyze", i),
    };
    let result = invocation.resolve().and_then(|cfg| {
        commands::configure_threads(&cfg)?;
        match name {
            "estimate" => commands::estimate(&cfg),
            "simulate" => commands::simulate(&cfg),
            "validate" => commands::validate(&cfg),
            _ => commands::analyze(&cfg),
        }
    });
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::NotConverged) => {
            eprintln!("warning: estimation did not converge; results written");
            ExitCode::from(2)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
