//! Trajectory CSV and JSON run reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::{io_error, CliError, Scenario};
use crate::integrators::{StepperConfig, Trajectory};
use crate::reduction::{Check, InvariantReport, InvariantStat};
use crate::systems::{Config, MechanicalSystem};

pub const REPORT_SCHEMA: u32 = 1;

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Column names: `t`, `V1..Vr`, `mu1..mur`, the configuration
/// coordinates, then the invariants.
pub fn csv_header(sys: &dyn MechanicalSystem, sample: &Config) -> Vec<String> {
    let r = sys.algebra().dim();
    let mut cols = vec!["t".to_string()];
    cols.extend((1..=r).map(|i| format!("V{i}")));
    cols.extend((1..=r).map(|i| format!("mu{i}")));
    match sample {
        Config::Rotation(_) => {
            for i in 1..=3 {
                cols.extend((1..=3).map(|j| format!("g{i}{j}")));
            }
        }
        other => cols.extend((1..=other.ambient_dim()).map(|i| format!("x{i}"))),
    }
    cols.extend(sys.invariant_names());
    cols
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory, sys: &dyn MechanicalSystem) -> Result<(), CliError> {
    let first = traj.samples.first().ok_or(CliError::Sim(crate::Error::EmptyTrajectory))?;
    let mut w = csv::Writer::from_path(path).map_err(|e| io_error(path, e))?;
    w.write_record(csv_header(sys, &first.state.config)).map_err(|e| io_error(path, e))?;
    for s in &traj.samples {
        let st = &s.state;
        let ambient = st.config.ambient();
        let row = std::iter::once(st.t)
            .chain(st.v.coeffs().iter().copied())
            .chain(st.mu.coeffs().iter().copied())
            .chain(ambient.iter().copied())
            .chain(s.invariants.iter().copied())
            .map(fmt);
        w.write_record(row).map_err(|e| io_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

#[derive(Debug, Serialize)]
pub struct RunReport<'a> {
    pub schema: u32,
    pub system: &'a str,
    pub parameters: BTreeMap<String, f64>,
    pub stepper: StepperConfig,
    pub tolerance: f64,
    pub samples: usize,
    pub t_final: f64,
    pub invariants: &'a [InvariantStat],
    pub checks: &'a [Check],
    pub passed: bool,
}

impl<'a> RunReport<'a> {
    pub fn new(scenario: &'a Scenario, traj: &'a Trajectory, report: &'a InvariantReport) -> Self {
        RunReport {
            schema: REPORT_SCHEMA,
            system: &report.system_id,
            parameters: scenario.system.parameters(),
            stepper: scenario.stepper,
            tolerance: scenario.tolerance,
            samples: traj.len(),
            t_final: traj.last().map_or(0.0, |s| s.t),
            invariants: &report.invariants,
            checks: &report.checks,
            passed: report.all_passed(),
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_error(path, e))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}
