//! `lmg`: deterministic command-line front end for the qubit-network
//! simulator. Usage: `lmg <command> --config <file.json> [--out <prefix>]
//! [--threads <k>]`.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::ExperimentConfig;
use error::{CliError, Result};

/// Default thread count can also come from this environment variable.
const THREADS_ENV: &str = "LMG_THREADS";

#[derive(Args, Debug)]
struct RunArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output path prefix; overrides the config's `output` field.
    #[arg(long)]
    out: Option<String>,
    /// Worker thread count (default: LMG_THREADS or all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ground-state fidelities against reference states over a J grid.
    GroundScan(RunArgs),
    /// Low-lying (or full, for N = 3) energy spectrum over a J grid.
    Spectrum(RunArgs),
    /// Ground-state pair negativity and single-qubit entropy over a J grid.
    EntanglementScan(RunArgs),
    /// Time evolution: fidelity and entanglement traces at fixed J.
    Evolve(RunArgs),
    /// Maximum target fidelity over a J grid and a time window.
    MaxFidelity(RunArgs),
    /// Quenched-disorder ensemble statistics.
    Disorder(RunArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GroundScan(_) => "ground-scan",
            Command::Spectrum(_) => "spectrum",
            Command::EntanglementScan(_) => "entanglement-scan",
            Command::Evolve(_) => "evolve",
            Command::MaxFidelity(_) => "max-fidelity",
            Command::Disorder(_) => "disorder",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::GroundScan(a)
            | Command::Spectrum(a)
            | Command::EntanglementScan(a)
            | Command::Evolve(a)
            | Command::MaxFidelity(a)
            | Command::Disorder(a) => a,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lmg", version, about = "Simulator for the fully-connected transverse-field XX qubit network")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn thread_count(args: &RunArgs) -> Option<usize> {
    args.threads.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok())
}

fn run(cli: &Cli) -> Result<()> {
    let args = cli.command.args();
    if let Some(k) = thread_count(args) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Config(format!("threads: {e}")))?;
    }
    let cfg = ExperimentConfig::load(&args.config)?;
    if cfg.command != cli.command.name() {
        return Err(CliError::Config(format!(
            "command: config says {:?} but the {:?} subcommand was invoked",
            cfg.command,
            cli.command.name()
        )));
    }
    let prefix = args
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| CliError::Config("output: set the config field or pass --out".into()))?;
    match cli.command {
        Command::GroundScan(_) => commands::cmd_ground_scan(&cfg, &prefix),
        Command::Spectrum(_) => commands::cmd_spectrum(&cfg, &prefix),
        Command::EntanglementScan(_) => commands::cmd_entanglement_scan(&cfg, &prefix),
        Command::Evolve(_) => commands::cmd_evolve(&cfg, &prefix),
        Command::MaxFidelity(_) => commands::cmd_max_fidelity(&cfg, &prefix),
        Command::Disorder(_) => commands::cmd_disorder(&cfg, &prefix),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
