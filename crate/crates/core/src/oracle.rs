//! Reference computations that do not go through the Euler-Poincaré
//! machinery: Cartesian constrained dynamics for the spherical pendulum,
//! finite-difference force checks, refined reference runs, and
//! discrete-action stationarity.

use nalgebra::{DVector, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrators::{rk4_step, simulate, StepperConfig, Trajectory};
use crate::lie::AlgebraVector;
use crate::systems::{omega_force, Config, EPState, MechanicalSystem};

/// A point mass constrained to a sphere of radius `radius`, in Cartesian
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianState {
    pub x: Vector3<f64>,
    pub v: Vector3<f64>,
    pub radius: f64,
}

impl CartesianState {
    pub fn new(x: Vector3<f64>, v: Vector3<f64>, radius: f64) -> Result<Self> {
        let s = Self { x, v, radius };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        let off = (self.x.norm() - self.radius).abs();
        if !(off < 1e-9 * self.radius.max(1.0)) {
            return Err(Error::OffManifold {
                what: "constrained position",
                residual: off,
            });
        }
        let tangency = self.x.dot(&self.v).abs();
        if !(tangency <= 1e-9 * self.radius * self.v.norm()) {
            return Err(Error::OffManifold {
                what: "constrained velocity",
                residual: tangency,
            });
        }
        Ok(())
    }

    /// Angular momentum about the origin per unit mass, `x × v`.
    pub fn angular_momentum(&self) -> Vector3<f64> {
        self.x.cross(&self.v)
    }
}

fn cartesian_rhs_unchecked(x: &Vector3<f64>, v: &Vector3<f64>, radius: f64, g: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let lambda = -(g.dot(x) + v.norm_squared()) / (radius * radius);
    (*v, g + x * lambda)
}

/// `(ẋ, v̇)` with `v̇ = g + λx` and the multiplier
/// `λ = -(g·x + |v|²)/R²` keeping the motion on the sphere. The mass
/// cancels from the equations.
pub fn pendulum_cartesian_rhs(s: &CartesianState, g: &Vector3<f64>) -> Result<(Vector3<f64>, Vector3<f64>)> {
    s.check()?;
    Ok(cartesian_rhs_unchecked(&s.x, &s.v, s.radius, g))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CartesianRun {
    pub times: Vec<f64>,
    pub states: Vec<CartesianState>,
    /// Largest correction applied by the per-step projection.
    pub max_projection: f64,
}

/// RK4 on `(x, v)` followed by projection of `x` onto the sphere and of `v`
/// onto the tangent plane after every step.
pub fn cartesian_pendulum_run(s0: &CartesianState, g: &Vector3<f64>, cfg: &StepperConfig) -> Result<CartesianRun> {
    s0.check()?;
    cfg.validate()?;
    let r = s0.radius;
    let rhs = |_t: f64, y: &DVector<f64>| -> Result<DVector<f64>> {
        let (dx, dv) = cartesian_rhs_unchecked(&y.fixed_rows::<3>(0).into(), &y.fixed_rows::<3>(3).into(), r, g);
        Ok(DVector::from_iterator(6, dx.iter().chain(dv.iter()).copied()))
    };
    let mut y = DVector::from_iterator(6, s0.x.iter().chain(s0.v.iter()).copied());
    let mut run = CartesianRun {
        times: vec![0.0],
        states: vec![*s0],
        max_projection: 0.0,
    };
    for k in 0..cfg.steps() {
        y = rk4_step(rhs, k as f64 * cfg.dt, &y, cfg.dt)?;
        let x: Vector3<f64> = y.fixed_rows::<3>(0).into();
        let v: Vector3<f64> = y.fixed_rows::<3>(3).into();
        let xp = x * (r / x.norm());
        let vp = v - xp * (xp.dot(&v) / (r * r));
        run.max_projection = run.max_projection.max((xp - x).norm()).max((vp - v).norm());
        y = DVector::from_iterator(6, xp.iter().chain(vp.iter()).copied());
        if (k + 1) % cfg.record_every == 0 {
            run.times.push((k + 1) as f64 * cfg.dt);
            run.states.push(CartesianState { x: xp, v: vp, radius: r });
        }
    }
    Ok(run)
}

/// `max_k |Ω_k(x, X) - [L̄(exp(εX_k)·x, X) - L̄(exp(-εX_k)·x, X)] / 2ε|`.
pub fn fd_force_check(sys: &dyn MechanicalSystem, x: &Config, v: &AlgebraVector, eps: f64) -> Result<f64> {
    if !(1e-8..=1e-4).contains(&eps) {
        return Err(Error::param("eps", format!("must lie in [1e-8, 1e-4], got {eps}")));
    }
    let force = omega_force(sys, x, v)?;
    let r = sys.algebra().dim();
    let action = sys.action();
    let mut worst = 0.0_f64;
    for k in 0..r {
        let step = AlgebraVector::basis(r, k) * eps;
        let plus = action.apply(&step, x)?;
        let minus = action.apply(&-step, x)?;
        let fd = (sys.lbar(&plus, v) - sys.lbar(&minus, v)) / (2.0 * eps);
        worst = worst.max((force[k] - fd).abs());
    }
    Ok(worst)
}

/// The same integration at `dt/100`, recorded at the original sample times.
pub fn richardson_reference(sys: &dyn MechanicalSystem, init: &EPState, cfg: &StepperConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let fine = StepperConfig {
        dt: cfg.dt / 100.0,
        record_every: cfg.record_every * 100,
        reorthonormalize_every: cfg.reorthonormalize_every * 100,
        ..*cfg
    };
    let mut traj = simulate(sys, init, &fine)?;
    traj.config = *cfg;
    Ok(traj)
}

fn check_length(traj: &Trajectory, needed: usize) -> Result<()> {
    if traj.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    if traj.len() < needed {
        return Err(Error::TrajectoryTooShort { found: traj.len(), needed });
    }
    Ok(())
}

fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, f)| 0.5 * (t[1] - t[0]) * (f[0] + f[1]))
        .sum()
}

/// Trapezoidal approximation of `∫ L̄(γ, V) dt` over the samples.
pub fn discrete_action(sys: &dyn MechanicalSystem, traj: &Trajectory) -> Result<f64> {
    check_length(traj, 2)?;
    let times = traj.times();
    let values: Vec<f64> = traj.samples.iter().map(|s| sys.lbar(&s.state.config, &s.state.v)).collect();
    Ok(trapezoid(&times, &values))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationarityReport {
    pub eps: f64,
    /// `I(γ_ε) - I(γ)`.
    pub delta_action: f64,
    /// `|ΔI| / ε²` (zero when `ε = 0`).
    pub ratio: f64,
}

/// A random variation `δω(t) = Σ_j c_j sin(jπ s)`, `s = (t - t₀)/(t₁ - t₀)`,
/// vanishing at both ends.
struct Bump {
    coeffs: Vec<DVector<f64>>,
    t0: f64,
    span: f64,
}

impl Bump {
    fn random(r: usize, t0: f64, t1: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..3).map(|_| DVector::from_fn(r, |_, _| rng.gen_range(-1.0..1.0))).collect();
        Self { coeffs, t0, span: t1 - t0 }
    }

    fn value(&self, t: f64) -> AlgebraVector {
        let s = (t - self.t0) / self.span;
        let mut out = DVector::zeros(self.coeffs[0].len());
        for (j, c) in self.coeffs.iter().enumerate() {
            out += c * (((j + 1) as f64) * std::f64::consts::PI * s).sin();
        }
        AlgebraVector::new(out)
    }

    fn rate(&self, t: f64) -> AlgebraVector {
        let s = (t - self.t0) / self.span;
        let mut out = DVector::zeros(self.coeffs[0].len());
        for (j, c) in self.coeffs.iter().enumerate() {
            let w = ((j + 1) as f64) * std::f64::consts::PI;
            out += c * (w * (w * s).cos() / self.span);
        }
        AlgebraVector::new(out)
    }
}

/// Perturbs `traj` by `ε δω` with `δω` vanishing at both ends:
/// `γ_ε = exp(ε δω)·γ` through the action and
/// `V_ε = V + ε (dδω/dt - [δω, V])`, then compares discrete actions.
pub fn stationarity_check(sys: &dyn MechanicalSystem, traj: &Trajectory, eps: f64, seed: u64) -> Result<StationarityReport> {
    check_length(traj, 10)?;
    if !eps.is_finite() || eps < 0.0 {
        return Err(Error::param("eps", "must be finite and non-negative"));
    }
    let times = traj.times();
    let bump = Bump::random(sys.algebra().dim(), times[0], times[times.len() - 1], seed);
    let action = sys.action();
    let mut base = Vec::with_capacity(times.len());
    let mut perturbed = Vec::with_capacity(times.len());
    for s in &traj.samples {
        let (x, v, t) = (&s.state.config, &s.state.v, s.state.t);
        let eta = bump.value(t);
        let xe = action.apply(&(&eta * eps), x)?;
        let dv = bump.rate(t) - sys.algebra().bracket(&eta, v)?;
        let ve = v + &(dv * eps);
        base.push(sys.lbar(x, v));
        perturbed.push(sys.lbar(&xe, &ve));
    }
    let delta_action = trapezoid(&times, &perturbed) - trapezoid(&times, &base);
    let ratio = if eps > 0.0 { delta_action.abs() / (eps * eps) } else { 0.0 };
    Ok(StationarityReport { eps, delta_action, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{exp_so3, GroupElement};
    use crate::systems::{AbelianSystem, FreeRigidBody, HeavyTop, InertiaOperator, SphericalPendulum};

    const G0: f64 = 9.81;

    #[test]
    fn cartesian_rhs_examples() {
        let r = 1.5;
        let g = Vector3::new(0.0, 0.0, -G0);
        let bottom = CartesianState::new(Vector3::new(0.0, 0.0, -r), Vector3::zeros(), r).unwrap();
        let (dx, dv) = pendulum_cartesian_rhs(&bottom, &g).unwrap();
        assert_eq!(dx, Vector3::zeros());
        assert!(dv.norm() < 1e-15);
        let equator = CartesianState::new(Vector3::new(r, 0.0, 0.0), Vector3::zeros(), r).unwrap();
        assert_eq!(pendulum_cartesian_rhs(&equator, &g).unwrap().1, g);
        assert!(CartesianState::new(Vector3::new(r, 0.0, 0.0), Vector3::new(1.0, 0.0, 0.0), r).is_err());
        assert!(CartesianState::new(Vector3::new(r + 1e-3, 0.0, 0.0), Vector3::zeros(), r).is_err());
    }

    #[test]
    fn conical_pendulum_stays_on_its_circle() {
        let (r, theta) = (1.0_f64, 0.6_f64);
        // polar angle from the downward vertical; ω² = g / (R cos θ)
        let omega = (G0 / (r * theta.cos())).sqrt();
        let rho = r * theta.sin();
        let x = Vector3::new(rho, 0.0, -r * theta.cos());
        let v = Vector3::new(0.0, omega * rho, 0.0);
        let s0 = CartesianState::new(x, v, r).unwrap();
        let g = Vector3::new(0.0, 0.0, -G0);
        let (_, dv) = pendulum_cartesian_rhs(&s0, &g).unwrap();
        assert!((dv - Vector3::new(-omega * omega * rho, 0.0, 0.0)).norm() < 1e-12);
        let run = cartesian_pendulum_run(&s0, &g, &StepperConfig::new(1e-3, 5.0).unwrap()).unwrap();
        for s in &run.states {
            assert!((s.x.norm() - r).abs() < 1e-12);
            assert!((s.x.z + r * theta.cos()).abs() < 1e-9);
        }
        assert!(run.max_projection < 1e-9);
    }

    #[test]
    fn fd_force_examples() {
        let inertia = InertiaOperator::diagonal([1.0, 2.0, 3.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = Config::Rotation(exp_so3(&Vector3::new(0.3, 1.1, -0.4)));
        let v = AlgebraVector::from_slice(&[0.5, -1.0, 0.7]);
        assert!(fd_force_check(&FreeRigidBody::new(inertia), &x, &v, 1e-6).unwrap() < 1e-12);
        let top = HeavyTop::new(inertia, 1.0, G0, Vector3::new(0.1, 0.2, 0.5)).unwrap();
        let pend = SphericalPendulum::new(1.2, 0.8, Vector3::new(0.0, 0.0, -G0)).unwrap();
        for _ in 0..10 {
            let w = AlgebraVector::from_slice(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]);
            let g = Config::Rotation(exp_so3(&Vector3::from_fn(|_, _| rng.gen_range(-2.0..2.0))));
            assert!(fd_force_check(&top, &g, &w, 1e-6).unwrap() < 1e-6);
            let p = Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0)).normalize() * 0.8;
            assert!(fd_force_check(&pend, &Config::Sphere(p), &w, 1e-6).unwrap() < 1e-6);
        }
        assert!(fd_force_check(&top, &x, &v, 1e-2).is_err());
    }

    #[test]
    fn richardson_reference_oscillator() {
        let sys = AbelianSystem::harmonic_oscillator();
        let init = EPState::from_velocity(&sys, 0.0, Config::Flat(DVector::from_element(1, 1.0)), AlgebraVector::zeros(1)).unwrap();
        let cfg = StepperConfig::new(1e-2, 2.0).unwrap().with_record_every(10).unwrap();
        let reference = richardson_reference(&sys, &init, &cfg).unwrap();
        assert_eq!(reference.len(), 21);
        for s in &reference.samples {
            assert!((s.state.config.ambient()[0] - s.state.t.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn discrete_action_of_uniform_rotation() {
        let sys = FreeRigidBody::new(InertiaOperator::diagonal([1.0, 2.0, 3.0]).unwrap());
        let init = EPState::from_velocity(&sys, 0.0, Config::Rotation(GroupElement::identity()), AlgebraVector::from_slice(&[0.0, 0.0, 2.0])).unwrap();
        let traj = simulate(&sys, &init, &StepperConfig::new(1e-2, 1.0).unwrap()).unwrap();
        // L̄ = ½·3·2² = 6 for one time unit
        assert!((discrete_action(&sys, &traj).unwrap() - 6.0).abs() < 1e-12);
        let zero = stationarity_check(&sys, &traj, 0.0, 1).unwrap();
        assert_eq!(zero.delta_action, 0.0);
        let mut short = traj.clone();
        short.samples.truncate(5);
        assert!(matches!(stationarity_check(&sys, &short, 1e-3, 1), Err(Error::TrajectoryTooShort { .. })));
    }

    #[test]
    fn oscillator_action_is_stationary() {
        let sys = AbelianSystem::harmonic_oscillator();
        let init = EPState::from_velocity(&sys, 0.0, Config::Flat(DVector::from_element(1, 1.0)), AlgebraVector::from_slice(&[0.3])).unwrap();
        let traj = simulate(&sys, &init, &StepperConfig::new(1e-3, 2.0).unwrap()).unwrap();
        let a = stationarity_check(&sys, &traj, 1e-2, 4).unwrap();
        let b = stationarity_check(&sys, &traj, 1e-3, 4).unwrap();
        let ratio = a.delta_action.abs() / b.delta_action.abs();
        assert!((80.0..120.0).contains(&ratio), "{ratio}");
    }
}
