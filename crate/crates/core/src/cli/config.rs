//! Scenario files: flat TOML, one key per line.
//!
//! ```toml
//! system = "heavy-top"          # free-rigid-body | heavy-top | spherical-pendulum | abelian-oscillator
//! inertia = [1.0, 1.5, 2.0]     # principal moments (rigid bodies)
//! mass = 1.0
//! gravity = 9.81                # scalar, or a vector for the pendulum
//! com = [0.0, 0.0, 0.3]         # body-frame center of mass (heavy top)
//! radius = 1.0                  # pendulum
//! initial_rotation = [0.4, 0.0, 0.0]   # axis-angle
//! initial_position = [1.0, 0.0, 0.0]   # sphere point, or x for the oscillator
//! initial_velocity = [0.3, -0.2, 4.0]  # V in the algebra; or initial_momentum
//! dt = 1e-3
//! t_end = 10.0
//! scheme = "rk4"                # rk4 | midpoint
//! reorthonormalize_every = 0
//! record_every = 10
//! tolerance = 1e-7              # relative drift allowed for every invariant
//! trajectory = "trajectory.csv"
//! report = "report.json"
//! ```

use nalgebra::{DVector, Vector3};
use serde::Deserialize;

use super::CliError;
use crate::error::Error;
use crate::integrators::{Scheme, StepperConfig};
use crate::lie::{AlgebraVector, DualVector, GroupElement};
use crate::systems::{AbelianSystem, Config, EPState, FreeRigidBody, HeavyTop, InertiaOperator, MechanicalSystem, SphericalPendulum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    FreeRigidBody,
    HeavyTop,
    SphericalPendulum,
    AbelianOscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Gravity {
    Scalar(f64),
    Vector([f64; 3]),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub system: SystemKind,
    pub inertia: Option<[f64; 3]>,
    pub mass: Option<f64>,
    pub gravity: Option<Gravity>,
    pub com: Option<[f64; 3]>,
    pub radius: Option<f64>,
    pub initial_rotation: Option<[f64; 3]>,
    pub initial_position: Option<Vec<f64>>,
    pub initial_velocity: Option<Vec<f64>>,
    pub initial_momentum: Option<Vec<f64>>,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    #[serde(default)]
    pub reorthonormalize_every: usize,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_trajectory")]
    pub trajectory: String,
    #[serde(default = "default_report")]
    pub report: String,
}

fn default_scheme() -> Scheme {
    Scheme::Rk4
}

fn default_record_every() -> usize {
    1
}

fn default_tolerance() -> f64 {
    1e-7
}

fn default_trajectory() -> String {
    "trajectory.csv".into()
}

fn default_report() -> String {
    "report.json".into()
}

/// A parsed and validated scenario, ready to run.
pub struct Scenario {
    pub system: Box<dyn MechanicalSystem>,
    pub init: EPState,
    pub stepper: StepperConfig,
    pub tolerance: f64,
    pub trajectory: String,
    pub report: String,
}

fn field(name: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        field: name.to_string(),
        message: message.into(),
    }
}

fn require<T: Copy>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| field(name, "required for this system"))
}

fn forbid<T>(value: &Option<T>, name: &str, system: &str) -> Result<(), CliError> {
    if value.is_some() {
        return Err(field(name, format!("not used by {system}")));
    }
    Ok(())
}

/// Attributes a library validation error to a config field.
fn attribute(err: Error, fallback: &str) -> CliError {
    match err {
        Error::InvalidParameter { name, reason } => field(&name, reason),
        other => field(fallback, other.to_string()),
    }
}

/// Names the key on the line where TOML parsing failed.
fn key_at(text: &str, err: &toml::de::Error) -> String {
    err.span()
        .and_then(|span| {
            let start = text[..span.start].rfind('\n').map_or(0, |i| i + 1);
            let line = text[start..].lines().next()?;
            let key = line.split('=').next()?.trim();
            (!key.is_empty() && line.contains('=')).then(|| key.to_string())
        })
        .unwrap_or_else(|| "config".to_string())
}

pub fn parse(text: &str) -> Result<ScenarioConfig, CliError> {
    toml::from_str(text).map_err(|e| field(&key_at(text, &e), e.message().to_string()))
}

fn vector3(v: &[f64], name: &str) -> Result<Vector3<f64>, CliError> {
    if v.len() != 3 {
        return Err(field(name, format!("expected 3 components, found {}", v.len())));
    }
    Ok(Vector3::new(v[0], v[1], v[2]))
}

fn finite(values: &[f64], name: &str) -> Result<(), CliError> {
    if values.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(field(name, "must be finite"))
    }
}

impl ScenarioConfig {
    /// Applies command-line overrides of the stepper.
    pub fn override_stepper(&mut self, dt: Option<f64>, t_end: Option<f64>) {
        if let Some(dt) = dt {
            self.dt = dt;
        }
        if let Some(t) = t_end {
            self.t_end = t;
        }
    }

    fn rotation(&self) -> Result<Config, CliError> {
        let axis_angle = self.initial_rotation.unwrap_or([0.0; 3]);
        finite(&axis_angle, "initial_rotation")?;
        Ok(Config::Rotation(GroupElement::from_axis_angle(&Vector3::from(axis_angle))))
    }

    fn inertia(&self) -> Result<InertiaOperator, CliError> {
        InertiaOperator::diagonal(require(self.inertia, "inertia")?).map_err(|e| attribute(e, "inertia"))
    }

    fn build_system(&self) -> Result<(Box<dyn MechanicalSystem>, Config), CliError> {
        match self.system {
            SystemKind::FreeRigidBody => {
                let name = "free-rigid-body";
                forbid(&self.mass, "mass", name)?;
                forbid(&self.gravity, "gravity", name)?;
                forbid(&self.com, "com", name)?;
                forbid(&self.radius, "radius", name)?;
                forbid(&self.initial_position, "initial_position", name)?;
                Ok((Box::new(FreeRigidBody::new(self.inertia()?)), self.rotation()?))
            }
            SystemKind::HeavyTop => {
                let name = "heavy-top";
                forbid(&self.radius, "radius", name)?;
                forbid(&self.initial_position, "initial_position", name)?;
                let gravity = match require(self.gravity, "gravity")? {
                    Gravity::Scalar(g) => g,
                    Gravity::Vector(_) => return Err(field("gravity", "heavy-top takes the scalar magnitude g")),
                };
                let com = Vector3::from(require(self.com, "com")?);
                let top = HeavyTop::new(self.inertia()?, require(self.mass, "mass")?, gravity, com).map_err(|e| attribute(e, "com"))?;
                Ok((Box::new(top), self.rotation()?))
            }
            SystemKind::SphericalPendulum => {
                let name = "spherical-pendulum";
                forbid(&self.inertia, "inertia", name)?;
                forbid(&self.com, "com", name)?;
                forbid(&self.initial_rotation, "initial_rotation", name)?;
                let gravity = match require(self.gravity, "gravity")? {
                    Gravity::Scalar(g) => Vector3::new(0.0, 0.0, -g),
                    Gravity::Vector(v) => Vector3::from(v),
                };
                let radius = require(self.radius, "radius")?;
                let pend = SphericalPendulum::new(require(self.mass, "mass")?, radius, gravity).map_err(|e| attribute(e, "gravity"))?;
                let x = vector3(self.initial_position.as_deref().ok_or_else(|| field("initial_position", "required for this system"))?, "initial_position")?;
                Ok((Box::new(pend), Config::Sphere(x)))
            }
            SystemKind::AbelianOscillator => {
                let name = "abelian-oscillator";
                for (v, n) in [(&self.inertia, "inertia"), (&self.com, "com")] {
                    forbid(v, n, name)?;
                }
                forbid(&self.mass, "mass", name)?;
                forbid(&self.gravity, "gravity", name)?;
                forbid(&self.radius, "radius", name)?;
                forbid(&self.initial_rotation, "initial_rotation", name)?;
                let x = self.initial_position.clone().unwrap_or_else(|| vec![1.0]);
                if x.len() != 1 {
                    return Err(field("initial_position", format!("expected 1 component, found {}", x.len())));
                }
                finite(&x, "initial_position")?;
                Ok((Box::new(AbelianSystem::harmonic_oscillator()), Config::Flat(DVector::from_vec(x))))
            }
        }
    }

    pub fn build(&self) -> Result<Scenario, CliError> {
        let (system, config) = self.build_system()?;
        let r = system.algebra().dim();
        system.validate_config(&config).map_err(|e| {
            let name = if matches!(config, Config::Rotation(_)) { "initial_rotation" } else { "initial_position" };
            field(name, e.to_string())
        })?;
        let check_len = |v: &[f64], name: &str| -> Result<(), CliError> {
            if v.len() != r {
                return Err(field(name, format!("expected {r} components, found {}", v.len())));
            }
            finite(v, name)
        };
        let init = match (&self.initial_velocity, &self.initial_momentum) {
            (Some(_), Some(_)) => return Err(field("initial_momentum", "give either initial_velocity or initial_momentum")),
            (Some(v), None) => {
                check_len(v, "initial_velocity")?;
                EPState::from_velocity(system.as_ref(), 0.0, config, AlgebraVector::from_slice(v))
            }
            (None, Some(m)) => {
                check_len(m, "initial_momentum")?;
                EPState::from_momentum(system.as_ref(), 0.0, config, DualVector::from_slice(m))
            }
            (None, None) => EPState::from_velocity(system.as_ref(), 0.0, config, AlgebraVector::zeros(r)),
        }
        .map_err(|e| attribute(e, "initial_velocity"))?;

        let stepper = StepperConfig {
            dt: self.dt,
            t_end: self.t_end,
            scheme: self.scheme,
            reorthonormalize_every: self.reorthonormalize_every,
            record_every: self.record_every,
        };
        stepper.validate().map_err(|e| attribute(e, "dt"))?;
        if !(self.tolerance > 0.0) {
            return Err(field("tolerance", "must be positive"));
        }
        for (name, path) in [("trajectory", &self.trajectory), ("report", &self.report)] {
            if path.trim().is_empty() {
                return Err(field(name, "must name a file"));
            }
        }
        Ok(Scenario {
            system,
            init,
            stepper,
            tolerance: self.tolerance,
            trajectory: self.trajectory.clone(),
            report: self.report.clone(),
        })
    }
}
