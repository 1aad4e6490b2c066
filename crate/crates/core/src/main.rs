use clap::{Parser, Subcommand};
use qqsim::run::{cmd_simulate, cmd_sweep, cmd_validate};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Entanglement dynamics of a qubit-qutrit pair coupled by Heisenberg
/// exchange and Dzyaloshinskii-Moriya interaction in local z fields.
#[derive(Parser)]
#[command(name = "qqsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured state and write negativity traces
    Simulate {
        /// JSON run configuration
        #[arg(long)]
        config: PathBuf,
    },
    /// Check the Hamiltonian builder against built-in reference matrices
    Validate,
    /// Tabulate reference-window statistics while varying one parameter
    Sweep {
        /// JSON run configuration providing the base setup
        #[arg(long)]
        config: PathBuf,
        /// Parameter to vary (e.g. d_z, b_qb, alpha, theta)
        #[arg(long)]
        param: String,
        /// Comma-separated list of values to try
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Simulate { config } => cmd_simulate(config, &mut out),
        Command::Validate => cmd_validate(&mut out),
        Command::Sweep {
            config,
            param,
            values,
        } => cmd_sweep(config, param, values, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
