//! The `epsim` command line: scenario runs and verification suites.

pub mod config;
pub mod output;
pub mod verify;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::Error;
use crate::integrators::simulate;
use crate::reduction::noether_monitor;

pub use config::{Scenario, ScenarioConfig};
pub use verify::{run_suite, CheckRow, Suite};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Sim(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => exit::CONFIG,
            CliError::Sim(Error::BlowUp { .. } | Error::NonFinite { .. } | Error::TooFarFromGroup(_)) => exit::NUMERICAL,
            CliError::Io(_) | CliError::Sim(_) => exit::CHECK_FAILED,
        }
    }
}

fn io_error(path: &Path, err: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {err}", path.display()))
}

/// Outcome of a scenario run.
#[derive(Debug)]
pub struct RunOutcome {
    pub trajectory: PathBuf,
    pub report: PathBuf,
    pub passed: bool,
}

/// Loads a scenario file, applies overrides, simulates, and writes the
/// trajectory CSV and the JSON report into `output_dir`.
pub fn run_scenario(config_path: &Path, output_dir: &Path, dt: Option<f64>, t_end: Option<f64>) -> Result<RunOutcome, CliError> {
    let text = std::fs::read_to_string(config_path).map_err(|e| CliError::Config {
        field: "config".into(),
        message: format!("cannot read {}: {e}", config_path.display()),
    })?;
    let mut cfg = config::parse(&text)?;
    cfg.override_stepper(dt, t_end);
    let scenario = cfg.build()?;

    let traj = simulate(scenario.system.as_ref(), &scenario.init, &scenario.stepper)?;
    let mut report = noether_monitor(&traj, scenario.system.as_ref())?;
    report.check_drifts(scenario.tolerance);

    std::fs::create_dir_all(output_dir).map_err(|e| io_error(output_dir, e))?;
    let trajectory = output_dir.join(&scenario.trajectory);
    let report_path = output_dir.join(&scenario.report);
    output::write_trajectory_csv(&trajectory, &traj, scenario.system.as_ref())?;
    let document = output::RunReport::new(&scenario, &traj, &report);
    output::write_json(&report_path, &document)?;
    Ok(RunOutcome {
        trajectory,
        report: report_path,
        passed: report.all_passed(),
    })
}

/// Runs `run_scenario` and maps the outcome to an exit code, printing a
/// one-line summary or the error.
pub fn run_command(config_path: &Path, output_dir: &Path, dt: Option<f64>, t_end: Option<f64>) -> i32 {
    match run_scenario(config_path, output_dir, dt, t_end) {
        Ok(out) => {
            println!("trajectory: {}", out.trajectory.display());
            println!("report:     {}", out.report.display());
            if out.passed {
                println!("all checks passed");
                exit::OK
            } else {
                eprintln!("one or more checks failed; see {}", out.report.display());
                exit::CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a verification suite, prints the check table, and returns the
/// exit code.
pub fn verify_command(suite: Suite) -> i32 {
    let rows = run_suite(suite);
    print!("{}", verify::format_table(&rows));
    if rows.iter().all(|r| r.passed) {
        exit::OK
    } else {
        exit::CHECK_FAILED
    }
}
