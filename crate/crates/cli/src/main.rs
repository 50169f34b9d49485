//! Command-line harness for the spectral simulation and exact
//! certification library.
//!
//! Four subcommands mirror the scenario kinds: `certify` drives the exact
//! rational certificate chain, `simulate` integrates one trajectory,
//! `sweep` walks a parameter axis, and `regress` checks a bounded-regime
//! run against its growth envelope. Each takes a scenario configuration
//! file plus an optional output override, and the exit status encodes the
//! outcome: 0 when every check passed and the run completed, 1 when a
//! mathematical check was violated, 2 for configuration or I/O problems.

mod config;
mod csvout;
mod plot;
mod record;
mod run;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use config::Kind;
use run::RunStatus;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "velarde",
    version,
    about = "Pseudo-spectral simulation and exact blow-up certification for a dispersive interface model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact certificate chain from a certify scenario.
    Certify(RunArgs),
    /// Integrate one trajectory and record its monitor series.
    Simulate(RunArgs),
    /// Run a family of trajectories along one parameter axis.
    Sweep(RunArgs),
    /// Check a bounded-regime trajectory against its growth envelope.
    Regress(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory, overriding the scenario's own setting.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the parameter echo and progress lines.
    #[arg(long)]
    quiet: bool,
}

fn execute(cli: &Cli) -> Result<RunStatus> {
    let (expected, args) = match &cli.command {
        Command::Certify(args) => (Kind::Certify, args),
        Command::Simulate(args) => (Kind::Simulate, args),
        Command::Sweep(args) => (Kind::Sweep, args),
        Command::Regress(args) => (Kind::RegressGlobal, args),
    };
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let mut scenario = config::parse_config(&text)?;
    if scenario.kind != expected {
        bail!(
            "scenario kind `{}` does not match subcommand `{}`",
            scenario.kind.word(),
            expected.word()
        );
    }
    if let Some(out) = &args.out {
        scenario.output_dir = out.clone();
    }
    run::run_scenario(&scenario, args.quiet)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(RunStatus::Pass) => ExitCode::SUCCESS,
        Ok(RunStatus::Violated) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
