use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use saddle_core::runner::{cmd_certify, cmd_compare, cmd_run, Overrides};

/// Alternating projected subgradient solver for convex-concave
/// saddle-point problems.
#[derive(Parser)]
#[command(name = "saddle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the run seed from the spec file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the iteration count from the spec file.
    #[arg(long, global = true)]
    iters: Option<usize>,

    /// Redirect all output files into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured problem once and write the trace CSV.
    Run { spec: PathBuf },
    /// Run every configured schedule from the same start and summarize.
    Compare { spec: PathBuf },
    /// Re-check the convergence certificates along a full run.
    Certify { spec: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        seed: cli.seed,
        iters: cli.iters,
        out_dir: cli.out,
    };
    let result = match &cli.command {
        Command::Run { spec } => cmd_run(spec, &overrides),
        Command::Compare { spec } => cmd_compare(spec, &overrides),
        Command::Certify { spec } => cmd_certify(spec, &overrides),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("saddle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
