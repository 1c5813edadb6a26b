use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use epmech::cli::{run_command, verify_command, Suite};

/// Simulate and check Euler-Poincaré systems.
#[derive(Parser)]
#[command(name = "epsim", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario file and write its trajectory and report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Directory for the trajectory CSV and the JSON report.
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
        /// Overrides `dt` from the config.
        #[arg(long)]
        dt: Option<f64>,
        /// Overrides `t_end` from the config.
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// Run a built-in verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

fn main() -> ExitCode {
    let code = match Args::parse().command {
        Command::Run { config, output_dir, dt, t_end } => run_command(&config, &output_dir, dt, t_end),
        Command::Verify { suite } => verify_command(suite),
    };
    ExitCode::from(code as u8)
}
