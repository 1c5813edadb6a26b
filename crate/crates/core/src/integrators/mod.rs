//! Flows of the Euler-Poincaré equation on `Q × g`, the Lie-Poisson
//! equation on `g*`, and reconstruction of `γ(t)` from `V(t)`.
//!
//! Momenta are advanced with explicit Runge-Kutta on their coefficient
//! vectors. Configurations are advanced with Runge-Kutta-Munthe-Kaas
//! updates `x ↦ exp(Θ)·x` through the system's action, so group and sphere
//! membership hold up to the accuracy of the exponential.

mod rk;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{reorthonormalize, AlgebraVector, DualVector, StructureConstants};
use crate::systems::{check_rotation, Action, Config, EPState, MechanicalSystem};

pub use rk::{midpoint_step, rk4_step, BLOW_UP};
use rk::check_blow_up;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Rk4,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepperConfig {
    pub dt: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    /// Reorthonormalize the configuration every this many steps (0 = never).
    pub reorthonormalize_every: usize,
    pub record_every: usize,
}

impl StepperConfig {
    /// RK4, no reorthonormalization, every step recorded.
    pub fn new(dt: f64, t_end: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            t_end,
            scheme: Scheme::Rk4,
            reorthonormalize_every: 0,
            record_every: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_record_every(mut self, n: usize) -> Result<Self> {
        self.record_every = n;
        self.validate()?;
        Ok(self)
    }

    pub fn with_reorthonormalize_every(mut self, n: usize) -> Self {
        self.reorthonormalize_every = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::param("dt", format!("must be positive and finite, got {}", self.dt)));
        }
        if !(self.t_end > self.dt) || !self.t_end.is_finite() {
            return Err(Error::param("t_end", format!("must exceed dt = {}, got {}", self.dt, self.t_end)));
        }
        if self.record_every == 0 {
            return Err(Error::param("record_every", "must be at least 1"));
        }
        Ok(())
    }

    /// Number of steps, `round(t_end / dt)`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub state: EPState,
    pub invariants: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub system_id: String,
    pub config: StepperConfig,
    pub invariant_names: Vec<String>,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.state.t).collect()
    }

    pub fn last(&self) -> Option<&EPState> {
        self.samples.last().map(|s| &s.state)
    }

    /// Values of the named invariant at every sample.
    pub fn invariant(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.invariant_names.iter().position(|n| n == name)?;
        Some(self.samples.iter().map(|s| s.invariants[i]).collect())
    }
}

/// `dμ/dt = -ad*_V μ + Ω(x, V)`, the momentum equation.
fn momentum_rate(sys: &dyn MechanicalSystem, x: &Config, v: &AlgebraVector, mu: &DualVector) -> Result<DualVector> {
    let coadjoint = sys.algebra().ad_star(v, mu)?;
    Ok(sys.force(x, v) - coadjoint)
}

fn check_dims(sys: &dyn MechanicalSystem, found: usize) -> Result<()> {
    let expected = sys.algebra().dim();
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Right-hand side of the Euler-Poincaré system at `(γ, V)` with cached
/// `μ`: returns `(dμ/dt, dγ/dt)` with `dγ/dt = φ(γ, V)` in ambient
/// coordinates.
pub fn ep_rhs(sys: &dyn MechanicalSystem, state: &EPState) -> Result<(DualVector, DVector<f64>)> {
    sys.validate_config(&state.config)?;
    check_dims(sys, state.v.dim())?;
    check_dims(sys, state.mu.dim())?;
    let dmu = momentum_rate(sys, &state.config, &state.v, &state.mu)?;
    let dgamma = sys.action().fundamental_field(&state.v, &state.config)?;
    Ok((dmu, dgamma))
}

/// The Lie-Poisson vector field `-ad*_{dh(ξ)} ξ` on `g*`.
pub fn lie_poisson_rhs(sys: &dyn MechanicalSystem, xi: &DualVector) -> Result<DualVector> {
    check_dims(sys, xi.dim())?;
    let dh = sys.reduced_hamiltonian_gradient(xi).ok_or(Error::MissingHamiltonian)?;
    Ok(-sys.algebra().ad_star(&dh, xi)?)
}

/// One reconstruction step `x ↦ exp(dt·V)·x` through the action, with `V`
/// sampled at the midpoint of the step. For the right action this is
/// `γ·exp(dt·V)`, for the left action `exp(dt·V)·γ`.
pub fn reconstruct_step(action: Action, x: &Config, v_mid: &AlgebraVector, dt: f64) -> Result<Config> {
    if let Config::Rotation(_) = x {
        check_rotation(x)?;
    }
    action.apply(&(v_mid * dt), x)
}

/// `dexp⁻¹_Θ(A)` truncated after the `Θ²` term, which is exact to the
/// order of RK4.
fn dexpinv(sc: &StructureConstants, theta: &AlgebraVector, a: &AlgebraVector) -> Result<AlgebraVector> {
    let b1 = sc.bracket(theta, a)?;
    let b2 = sc.bracket(theta, &b1)?;
    Ok(a + &(&b1 * 0.5) + &b2 * (1.0 / 12.0))
}

struct Tableau {
    a: &'static [&'static [f64]],
    b: &'static [f64],
    c: &'static [f64],
}

const RK4: Tableau = Tableau {
    a: &[&[], &[0.5], &[0.0, 0.5], &[0.0, 0.0, 1.0]],
    b: &[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
    c: &[0.0, 0.5, 0.5, 1.0],
};

const MIDPOINT: Tableau = Tableau {
    a: &[&[], &[0.5]],
    b: &[0.0, 1.0],
    c: &[0.0, 0.5],
};

fn tableau(scheme: Scheme) -> &'static Tableau {
    match scheme {
        Scheme::Rk4 => &RK4,
        Scheme::Midpoint => &MIDPOINT,
    }
}

fn ensure_finite(t: f64, v: &DualVector) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { t })
    }
}

/// One Runge-Kutta-Munthe-Kaas step of the coupled system `(x, μ)`.
fn coupled_step(sys: &dyn MechanicalSystem, tab: &Tableau, t: f64, x: &Config, mu: &DualVector, dt: f64) -> Result<(Config, DualVector)> {
    let r = sys.algebra().dim();
    let action = sys.action();
    let mut ks: Vec<AlgebraVector> = Vec::with_capacity(tab.b.len());
    let mut rates: Vec<DualVector> = Vec::with_capacity(tab.b.len());
    for (i, row) in tab.a.iter().enumerate() {
        let mut theta = AlgebraVector::zeros(r);
        let mut m = mu.clone();
        for (j, &a) in row.iter().enumerate() {
            if a != 0.0 {
                theta += &(&ks[j] * (a * dt));
                m += &(&rates[j] * (a * dt));
            }
        }
        let xi = action.apply(&theta, x)?;
        let v = sys.legendre_inverse(&xi, &m);
        let rate = momentum_rate(sys, &xi, &v, &m)?;
        ensure_finite(t + tab.c[i] * dt, &rate)?;
        ks.push(dexpinv(sys.algebra(), &theta, &v)?);
        rates.push(rate);
    }
    let mut theta = AlgebraVector::zeros(r);
    let mut out = mu.clone();
    for (i, &b) in tab.b.iter().enumerate() {
        if b != 0.0 {
            theta += &(&ks[i] * (b * dt));
            out += &(&rates[i] * (b * dt));
        }
    }
    Ok((action.apply(&theta, x)?, out))
}

fn advance_flat<F>(scheme: Scheme, rhs: F, t: f64, y: &DVector<f64>, dt: f64) -> Result<DVector<f64>>
where
    F: Fn(f64, &DVector<f64>) -> Result<DVector<f64>>,
{
    match scheme {
        Scheme::Rk4 => rk4_step(rhs, t, y, dt),
        Scheme::Midpoint => midpoint_step(rhs, t, y, dt),
    }
}

fn reorthonormalized(x: Config, radius: f64) -> Result<Config> {
    Ok(match x {
        Config::Rotation(g) => Config::Rotation(reorthonormalize(g.matrix())?),
        Config::Sphere(p) => Config::Sphere(p * (radius / p.norm())),
        flat => flat,
    })
}

/// Integrates `dx/dt = f(t, x)` on a flat space with the configured scheme,
/// recording `(t, x)` every `record_every` steps.
pub fn integrate_flat<F>(rhs: F, y0: &DVector<f64>, cfg: &StepperConfig) -> Result<Vec<(f64, DVector<f64>)>>
where
    F: Fn(f64, &DVector<f64>) -> Result<DVector<f64>>,
{
    cfg.validate()?;
    let n = cfg.steps();
    let mut out = vec![(0.0, y0.clone())];
    let mut y = y0.clone();
    for k in 0..n {
        let t = k as f64 * cfg.dt;
        y = advance_flat(cfg.scheme, &rhs, t, &y, cfg.dt)?;
        let t1 = (k + 1) as f64 * cfg.dt;
        check_blow_up(t1, y.amax())?;
        if (k + 1) % cfg.record_every == 0 {
            out.push((t1, y.clone()));
        }
    }
    Ok(out)
}

/// Lie-Poisson flow `dξ/dt = -ad*_{dh(ξ)} ξ` from `xi0`.
pub fn lie_poisson_flow(sys: &dyn MechanicalSystem, xi0: &DualVector, cfg: &StepperConfig) -> Result<Vec<(f64, DualVector)>> {
    check_dims(sys, xi0.dim())?;
    sys.reduced_hamiltonian(xi0).ok_or(Error::MissingHamiltonian)?;
    let rhs = |_t: f64, y: &DVector<f64>| lie_poisson_rhs(sys, &DualVector::new(y.clone())).map(DualVector::into_inner);
    Ok(integrate_flat(rhs, xi0.coeffs(), cfg)?
        .into_iter()
        .map(|(t, y)| (t, DualVector::new(y)))
        .collect())
}

fn sample(sys: &dyn MechanicalSystem, t: f64, x: &Config, mu: &DualVector) -> Sample {
    let v = sys.legendre_inverse(x, mu);
    Sample {
        state: EPState {
            t,
            config: x.clone(),
            v,
            mu: mu.clone(),
        },
        invariants: sys.invariant_values(x, mu),
    }
}

/// Integrates the Euler-Poincaré equation together with the compatibility
/// condition `dγ/dt = φ(γ, V)`.
///
/// When the system declares [`MechanicalSystem::lagrangian_reduction`] the
/// momentum equation is advanced on its own, without reference to `γ`, and
/// `γ` is reconstructed from the momentum samples at the start, middle and
/// end of each step. Otherwise `(γ, μ)` are stepped together. Along
/// underdetermined systems the evolved variable is `μ`; `V` in the samples
/// is its Legendre inverse.
pub fn simulate(sys: &dyn MechanicalSystem, init: &EPState, cfg: &StepperConfig) -> Result<Trajectory> {
    cfg.validate()?;
    sys.validate_config(&init.config)?;
    check_dims(sys, init.v.dim())?;
    check_dims(sys, init.mu.dim())?;
    let radius = init.config.sphere_point().map(|p| p.norm()).unwrap_or(1.0);
    let n = cfg.steps();
    let dt = cfg.dt;
    let mut samples = Vec::with_capacity(n / cfg.record_every + 1);
    let mut x = init.config.clone();
    let mut mu = init.mu.clone();
    samples.push(sample(sys, init.t, &x, &mu));

    let x0 = init.config.clone();
    let reduced_rhs = |t: f64, y: &DVector<f64>| -> Result<DVector<f64>> {
        let m = DualVector::new(y.clone());
        let v = sys.legendre_inverse(&x0, &m);
        let rate = momentum_rate(sys, &x0, &v, &m)?;
        ensure_finite(t, &rate)?;
        Ok(rate.into_inner())
    };
    let tab = tableau(cfg.scheme);

    for k in 0..n {
        let t = init.t + k as f64 * dt;
        let t1 = init.t + (k + 1) as f64 * dt;
        if sys.lagrangian_reduction() {
            let half = DualVector::new(advance_flat(cfg.scheme, reduced_rhs, t, mu.coeffs(), 0.5 * dt)?);
            let next = DualVector::new(advance_flat(cfg.scheme, reduced_rhs, t, mu.coeffs(), dt)?);
            let v_half = sys.legendre_inverse(&x, &half);
            x = match cfg.scheme {
                Scheme::Midpoint => reconstruct_step(sys.action(), &x, &v_half, dt)?,
                Scheme::Rk4 => {
                    let sc = sys.algebra();
                    let k1 = sys.legendre_inverse(&x, &mu);
                    let k2 = dexpinv(sc, &(&k1 * (0.5 * dt)), &v_half)?;
                    let k3 = dexpinv(sc, &(&k2 * (0.5 * dt)), &v_half)?;
                    let k4 = dexpinv(sc, &(&k3 * dt), &sys.legendre_inverse(&x, &next))?;
                    let theta = (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
                    sys.action().apply(&theta, &x)?
                }
            };
            mu = next;
        } else {
            let (nx, nmu) = coupled_step(sys, tab, t, &x, &mu, dt)?;
            x = nx;
            mu = nmu;
        }
        if cfg.reorthonormalize_every > 0 && (k + 1) % cfg.reorthonormalize_every == 0 {
            x = reorthonormalized(x, radius)?;
        }
        check_blow_up(t1, x.max_abs().max(mu.max_abs()))?;
        if (k + 1) % cfg.record_every == 0 {
            samples.push(sample(sys, t1, &x, &mu));
        }
    }

    Ok(Trajectory {
        system_id: sys.id().to_string(),
        config: *cfg,
        invariant_names: sys.invariant_names(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{exp_so3, GroupElement};
    use crate::systems::{AbelianSystem, FreeRigidBody, InertiaOperator, SphericalPendulum};
    use nalgebra::Vector3;
    use std::sync::Arc;

    fn body() -> FreeRigidBody {
        FreeRigidBody::new(InertiaOperator::diagonal([1.0, 2.0, 3.0]).unwrap())
    }

    fn identity() -> Config {
        Config::Rotation(GroupElement::identity())
    }

    #[test]
    fn ep_rhs_rigid_body_example() {
        let sys = body();
        let state = EPState::from_velocity(&sys, 0.0, identity(), AlgebraVector::from_slice(&[1.0, 1.0, 1.0])).unwrap();
        assert_eq!(state.mu, DualVector::from_slice(&[1.0, 2.0, 3.0]));
        let (dmu, dgamma) = ep_rhs(&sys, &state).unwrap();
        assert_eq!(dmu, DualVector::from_slice(&[-1.0, 2.0, -1.0]));
        // dγ = γ·hat(Ω) at the identity
        assert_eq!(dgamma.as_slice(), &[0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0]);
    }

    #[test]
    fn ep_rhs_oscillator_example() {
        let sys = AbelianSystem::harmonic_oscillator();
        let state = EPState::from_velocity(&sys, 0.0, Config::Flat(DVector::from_element(1, 1.0)), AlgebraVector::zeros(1)).unwrap();
        let (dmu, dgamma) = ep_rhs(&sys, &state).unwrap();
        assert_eq!(dmu[0], -1.0);
        assert_eq!(dgamma[0], 0.0);
    }

    #[test]
    fn ep_rhs_isotropy_velocity_without_momentum() {
        let sys = SphericalPendulum::new(1.0, 1.0, Vector3::zeros()).unwrap();
        let x = Vector3::new(0.6, 0.0, 0.8);
        let state = EPState {
            t: 0.0,
            config: Config::Sphere(x),
            v: AlgebraVector::from_vector3(&(x * 2.0)),
            mu: DualVector::zeros(3),
        };
        let (dmu, dgamma) = ep_rhs(&sys, &state).unwrap();
        assert!(dmu.max_abs() < 1e-15);
        assert!(dgamma.amax() < 1e-15);
    }

    #[test]
    fn lie_poisson_examples() {
        let sys = body();
        let rhs = lie_poisson_rhs(&sys, &DualVector::from_slice(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(rhs, DualVector::from_slice(&[-1.0, 2.0, -1.0]));
        assert_eq!(lie_poisson_rhs(&sys, &DualVector::zeros(3)).unwrap().max_abs(), 0.0);
        let axis = lie_poisson_rhs(&sys, &DualVector::from_slice(&[0.0, 0.0, 3.0])).unwrap();
        assert_eq!(axis.max_abs(), 0.0);
        let osc = AbelianSystem::harmonic_oscillator();
        assert_eq!(lie_poisson_rhs(&osc, &DualVector::zeros(1)), Err(Error::MissingHamiltonian));
    }

    #[test]
    fn reconstruct_examples() {
        let g = exp_so3(&Vector3::new(0.2, -0.4, 0.9));
        let x = Config::Rotation(g);
        assert_eq!(reconstruct_step(Action::Right, &x, &AlgebraVector::zeros(3), 0.1).unwrap(), x);

        let (r, w, dt) = (2.0, 0.7, 0.01);
        let p = reconstruct_step(Action::Left, &Config::Sphere(Vector3::new(r, 0.0, 0.0)), &AlgebraVector::from_slice(&[0.0, 0.0, w]), dt).unwrap();
        let expected = Vector3::new((w * dt).cos(), (w * dt).sin(), 0.0) * r;
        assert!((p.sphere_point().unwrap() - expected).amax() < 1e-15);

        let v = AlgebraVector::from_slice(&[0.3, -0.1, 0.5]);
        for action in [Action::Left, Action::Right] {
            let mut y = x.clone();
            for _ in 0..1000 {
                y = reconstruct_step(action, &y, &v, 1e-3).unwrap();
            }
            let expected = action.apply(&v, &x).unwrap();
            let diff = (y.rotation().unwrap().matrix() - expected.rotation().unwrap().matrix()).amax();
            assert!(diff < 1e-10, "{action:?} {diff}");
        }
    }

    #[test]
    fn reconstruct_rejects_off_group_input() {
        let bad = Config::Rotation(GroupElement::from_matrix_unchecked(nalgebra::Matrix3::identity() * 1.01));
        assert!(reconstruct_step(Action::Right, &bad, &AlgebraVector::zeros(3), 0.1).is_err());
    }

    #[test]
    fn stepper_config_validation() {
        assert!(StepperConfig::new(0.0, 1.0).is_err());
        assert!(StepperConfig::new(0.1, 0.05).is_err());
        assert!(StepperConfig::new(0.1, 1.0).unwrap().with_record_every(0).is_err());
        assert_eq!(StepperConfig::new(1e-3, 10.0).unwrap().steps(), 10_000);
    }

    #[test]
    fn relative_equilibrium_is_steady() {
        let sys = body();
        let init = EPState::from_velocity(&sys, 0.0, identity(), AlgebraVector::from_slice(&[0.0, 0.0, 1.0])).unwrap();
        let traj = simulate(&sys, &init, &StepperConfig::new(1e-3, 10.0).unwrap().with_record_every(100).unwrap()).unwrap();
        for s in &traj.samples {
            assert!((s.state.v.coeffs() - init.v.coeffs()).amax() < 1e-10);
        }
    }

    #[test]
    fn oscillator_matches_cosine() {
        let sys = AbelianSystem::harmonic_oscillator();
        let init = EPState::from_velocity(&sys, 0.0, Config::Flat(DVector::from_element(1, 1.0)), AlgebraVector::zeros(1)).unwrap();
        let traj = simulate(&sys, &init, &StepperConfig::new(1e-3, 10.0).unwrap()).unwrap();
        let last = traj.last().unwrap();
        assert!((last.t - 10.0).abs() < 1e-12);
        let x = last.config.ambient()[0];
        assert!((x - 10.0_f64.cos()).abs() < 1e-8, "{}", x - 10.0_f64.cos());
    }

    #[test]
    fn samples_are_uniformly_spaced() {
        let sys = body();
        let init = EPState::from_velocity(&sys, 0.0, identity(), AlgebraVector::from_slice(&[1.0, 0.1, 0.1])).unwrap();
        let cfg = StepperConfig::new(1e-2, 1.0).unwrap().with_record_every(7).unwrap();
        let traj = simulate(&sys, &init, &cfg).unwrap();
        let t = traj.times();
        assert_eq!(t.len(), 100 / 7 + 1);
        for w in t.windows(2) {
            assert!((w[1] - w[0] - 0.07).abs() < 1e-12);
        }
    }

    #[test]
    fn midpoint_scheme_runs_for_both_modes() {
        let sys = body();
        let init = EPState::from_velocity(&sys, 0.0, identity(), AlgebraVector::from_slice(&[1.0, 0.1, 0.1])).unwrap();
        let cfg = StepperConfig::new(1e-3, 1.0).unwrap().with_scheme(Scheme::Midpoint);
        let h = simulate(&sys, &init, &cfg).unwrap().invariant("H").unwrap();
        assert!((h.last().unwrap() - h[0]).abs() / h[0] < 1e-5);

        let pend = SphericalPendulum::new(1.0, 1.0, Vector3::new(0.0, 0.0, -9.81)).unwrap();
        let init = EPState::from_velocity(&pend, 0.0, Config::Sphere(Vector3::x()), AlgebraVector::zeros(3)).unwrap();
        let h = simulate(&pend, &init, &cfg).unwrap().invariant("H").unwrap();
        assert!((h.last().unwrap() - h[0]).abs() < 1e-4);
    }

    #[test]
    fn reorthonormalization_keeps_group_membership() {
        let sys = body();
        let init = EPState::from_velocity(&sys, 0.0, identity(), AlgebraVector::from_slice(&[1.0, 0.1, 0.1])).unwrap();
        let cfg = StepperConfig::new(1e-2, 5.0).unwrap().with_reorthonormalize_every(10);
        let traj = simulate(&sys, &init, &cfg).unwrap();
        for s in &traj.samples {
            assert!(s.state.config.rotation().unwrap().orthogonality_residual() < 1e-13);
        }
    }

    #[test]
    fn blow_up_is_detected() {
        // ẍ = 2x³ escapes to infinity in finite time
        let sys = AbelianSystem::new("quartic", 1, Arc::new(|x, v| 0.5 * v[0] * v[0] + 0.5 * x[0].powi(4))).unwrap();
        let init = EPState::from_velocity(&sys, 0.0, Config::Flat(DVector::from_element(1, 10.0)), AlgebraVector::zeros(1)).unwrap();
        let err = simulate(&sys, &init, &StepperConfig::new(1e-3, 1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::BlowUp { .. } | Error::NonFinite { .. }), "{err:?}");
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let sys = body();
        let state = EPState {
            t: 0.0,
            config: identity(),
            v: AlgebraVector::zeros(2),
            mu: DualVector::zeros(3),
        };
        assert!(matches!(ep_rhs(&sys, &state), Err(Error::DimensionMismatch { .. })));
        assert!(simulate(&sys, &state, &StepperConfig::new(0.1, 1.0).unwrap()).is_err());
    }
}
