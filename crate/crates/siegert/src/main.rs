use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use siegert::config::{ParitySelection, SolverKind};
use siegert::{commands, CliError, Command, RunConfig};

#[derive(Parser)]
#[command(
    name = "siegert",
    version,
    about = "Locate resonance, bound and anti-bound poles of 1D symmetric potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Density map of the residual and its local minima
    Scan(Args),
    /// Refined, classified and pair-completed poles
    Poles(Args),
    /// Transmission curves for a list of cutoffs
    Transmit(Args),
    /// Cutoff ladder statistics and the pole-argument sweep over λ
    Conjecture(Args),
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides "output" in the config)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    solver: Option<SolverKind>,
    #[arg(long, value_enum)]
    parity: Option<ParitySelection>,
}

fn execute(cmd: Command, args: Args) -> Result<Vec<PathBuf>, CliError> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(s) = args.solver {
        cfg.solver = s;
    }
    if let Some(p) = args.parity {
        cfg.parity = p;
    }
    let out = args
        .out
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    commands::run(cmd, &cfg, &out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Cmd::Scan(a) => (Command::Scan, a),
        Cmd::Poles(a) => (Command::Poles, a),
        Cmd::Transmit(a) => (Command::Transmit, a),
        Cmd::Conjecture(a) => (Command::Conjecture, a),
    };
    match execute(cmd, args) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
