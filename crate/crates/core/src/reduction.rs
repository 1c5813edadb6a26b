//! Momentum maps on `T*SO(3)` and reduction diagnostics.
//!
//! Phase points are stored left-trivialized: a base point `g` and the body
//! covector `μ = (T L_g)^T ζ`. With this trivialization `J^R` is the stored
//! covector and `J^L = Ad*_g J^R` is the spatial momentum.
//!
//! The systems here use body variables (the right action of `G` on itself),
//! so their Hamiltonians are invariant under left translations `g ↦ h·g`.
//! `J^L` is the Noether first integral and `J^R` is the reducing map onto
//! `g*`: `H = h ∘ J^R` exactly when `H` is left-invariant.

use nalgebra::{DMatrix, DVector, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrators::{integrate_flat, lie_poisson_flow, simulate, StepperConfig, Trajectory};
use crate::lie::{exp_so3, AlgebraVector, Ad_star, DualVector, GroupElement, GROUP_TOL};
use crate::systems::{Config, EPState, HeavyTop, MechanicalSystem};

/// A covector on `SO(3)`, left-trivialized.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentPoint {
    pub g: GroupElement,
    pub mu_body: DualVector,
}

impl CotangentPoint {
    pub fn new(g: GroupElement, mu_body: DualVector) -> Result<Self> {
        if mu_body.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: mu_body.dim(),
            });
        }
        let residual = g.orthogonality_residual();
        if !(residual < GROUP_TOL) {
            return Err(Error::OffManifold {
                what: "base point",
                residual,
            });
        }
        Ok(Self { g, mu_body })
    }

    /// The phase point of a body-frame state `(γ, μ)`.
    pub fn from_state(state: &EPState) -> Result<Self> {
        let g = state.config.rotation().ok_or(Error::KindMismatch("SO(3) configuration"))?;
        Self::new(*g, state.mu.clone())
    }
}

/// `J^R(ζ)`: the stored body covector.
pub fn momentum_right(zeta: &CotangentPoint) -> DualVector {
    zeta.mu_body.clone()
}

/// `J^L(ζ) = Ad*_g J^R(ζ)`, the spatial momentum.
pub fn momentum_left(zeta: &CotangentPoint) -> DualVector {
    Ad_star(&zeta.g, &zeta.mu_body).expect("three-dimensional covector")
}

/// Components `⟨J^R(ζ), b_i⟩` along a basis of a subalgebra `g₁`.
pub fn momentum_restricted(zeta: &CotangentPoint, basis: &[AlgebraVector]) -> Result<DualVector> {
    if basis.is_empty() {
        return Err(Error::DegenerateBasis(0.0));
    }
    for b in basis {
        if b.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: b.dim() });
        }
    }
    let m = DMatrix::from_fn(3, basis.len(), |i, j| basis[j][i]);
    let sv = m.clone().svd(false, false).singular_values;
    let smallest = if basis.len() > 3 { 0.0 } else { sv.min() };
    if !(smallest > 1e-10 * sv.max().max(f64::MIN_POSITIVE)) {
        return Err(Error::DegenerateBasis(smallest));
    }
    Ok(DualVector::new(m.transpose() * zeta.mu_body.coeffs()))
}

/// Value of the extended momentum map for the heavy top.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedMomentum {
    /// Spatial momentum `J^L`.
    pub jl: Vec<f64>,
    /// Body momentum `J^R`.
    pub jr: Vec<f64>,
    /// `K(ζ) = g^T · vertical`, the vertical seen from the body.
    pub k: Vector3<f64>,
}

pub fn extended_momentum(zeta: &CotangentPoint, vertical: &Vector3<f64>) -> Result<ExtendedMomentum> {
    if !((vertical.norm() - 1.0).abs() < 1e-9) {
        return Err(Error::param("vertical", "must be a unit vector"));
    }
    Ok(ExtendedMomentum {
        jl: momentum_left(zeta).coeffs().as_slice().to_vec(),
        jr: zeta.mu_body.coeffs().as_slice().to_vec(),
        k: zeta.g.matrix().transpose() * vertical,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantStat {
    pub name: String,
    pub initial: f64,
    pub max_abs_drift: f64,
    pub max_rel_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub system_id: String,
    pub invariants: Vec<InvariantStat>,
    pub checks: Vec<Check>,
}

/// Drift relative to `|initial|`, or absolute when the initial value is
/// below `1e-12`.
pub fn relative_drift(abs_drift: f64, initial: f64) -> f64 {
    if initial.abs() >= 1e-12 {
        abs_drift / initial.abs()
    } else {
        abs_drift
    }
}

impl InvariantReport {
    pub fn get(&self, name: &str) -> Option<&InvariantStat> {
        self.invariants.iter().find(|s| s.name == name)
    }

    /// Records a check passing when `value < tolerance`.
    pub fn add_check(&mut self, name: &str, value: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: value < tolerance,
            value,
            tolerance,
        });
    }

    /// Adds a relative-drift check for every monitored invariant.
    pub fn check_drifts(&mut self, tolerance: f64) {
        let stats = self.invariants.clone();
        for s in stats {
            self.add_check(&format!("{} drift", s.name), s.max_rel_drift, tolerance);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Drift statistics of every invariant recorded along `traj`: spatial
/// momentum for the free rigid body, its vertical component and the
/// Casimirs for the heavy top, `π·g/|g|` for the pendulum, the energy for
/// all of them.
pub fn noether_monitor(traj: &Trajectory, sys: &dyn MechanicalSystem) -> Result<InvariantReport> {
    if traj.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    if traj.len() < 2 {
        return Err(Error::TrajectoryTooShort { found: traj.len(), needed: 2 });
    }
    if traj.system_id != sys.id() || traj.invariant_names != sys.invariant_names() {
        return Err(Error::param("trajectory", format!("recorded for `{}`, not `{}`", traj.system_id, sys.id())));
    }
    let first = &traj.samples[0].invariants;
    let invariants = traj
        .invariant_names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let initial = first[i];
            let max_abs_drift = traj
                .samples
                .iter()
                .map(|s| (s.invariants[i] - initial).abs())
                .fold(0.0_f64, f64::max);
            InvariantStat {
                name: name.clone(),
                initial,
                max_abs_drift,
                max_rel_drift: relative_drift(max_abs_drift, initial),
            }
        })
        .collect();
    Ok(InvariantReport {
        system_id: sys.id().to_string(),
        invariants,
        checks: Vec::new(),
    })
}

fn random_rotation(rng: &mut impl Rng) -> GroupElement {
    let axis = Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    exp_so3(&(axis * rng.gen_range(0.0..std::f64::consts::PI)))
}

fn random_covector(rng: &mut impl Rng) -> DualVector {
    DualVector::from_slice(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)])
}

fn hamiltonian(sys: &dyn MechanicalSystem, g: &GroupElement, mu: &DualVector) -> f64 {
    sys.energy(&Config::Rotation(*g), mu)
}

fn require_rotation_system(sys: &dyn MechanicalSystem) -> Result<()> {
    sys.validate_config(&Config::Rotation(GroupElement::identity()))
}

/// `|H(h·g, μ) - H(g, μ)|` at `points` random phase points and random left
/// translations `h`. These translations preserve `J^R`, so the defects
/// vanish exactly when `H` factors through `J^R`.
pub fn factorization_defects(sys: &dyn MechanicalSystem, points: usize, seed: u64) -> Result<Vec<f64>> {
    require_rotation_system(sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..points)
        .map(|_| {
            let g = random_rotation(&mut rng);
            let mu = random_covector(&mut rng);
            let h = random_rotation(&mut rng);
            (hamiltonian(sys, &h.compose(&g), &mu) - hamiltonian(sys, &g, &mu)).abs()
        })
        .collect())
}

/// As [`factorization_defects`], translating only by rotations about the
/// vertical: these preserve both `J^R` and `K`.
pub fn extended_factorization_defects(sys: &dyn MechanicalSystem, points: usize, seed: u64) -> Result<Vec<f64>> {
    require_rotation_system(sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..points)
        .map(|_| {
            let g = random_rotation(&mut rng);
            let mu = random_covector(&mut rng);
            let h = exp_so3(&(HeavyTop::VERTICAL * rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)));
            (hamiltonian(sys, &h.compose(&g), &mu) - hamiltonian(sys, &g, &mu)).abs()
        })
        .collect())
}

/// `max |H(g, μ) - h(J^R(g, μ))|` over random phase points.
pub fn hamiltonian_factorization_residual(sys: &dyn MechanicalSystem, points: usize, seed: u64) -> Result<f64> {
    require_rotation_system(sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..points {
        let g = random_rotation(&mut rng);
        let mu = random_covector(&mut rng);
        let zeta = CotangentPoint::new(g, mu.clone())?;
        let h = sys.reduced_hamiltonian(&momentum_right(&zeta)).ok_or(Error::MissingHamiltonian)?;
        worst = worst.max((hamiltonian(sys, &g, &mu) - h).abs());
    }
    Ok(worst)
}

/// `max |H(g, μ) - h_ext(J^R, K)|` for the heavy top over random phase points.
pub fn extended_factorization_residual(top: &HeavyTop, points: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..points {
        let g = random_rotation(&mut rng);
        let mu = random_covector(&mut rng);
        let ext = extended_momentum(&CotangentPoint::new(g, mu.clone())?, &HeavyTop::VERTICAL)?;
        let h = top.extended_hamiltonian(&Vector3::from_column_slice(&ext.jr), &ext.k);
        worst = worst.max((hamiltonian(top, &g, &mu) - h).abs());
    }
    Ok(worst)
}

/// Right-hand side of the heavy-top equations on `so(3)* × R³`:
/// `μ' = μ × Ω + m g Γ × a`, `Γ' = Γ × Ω`, `Ω = I♭⁻¹ μ`.
pub fn heavy_top_reduced_rhs(top: &HeavyTop, mu: &Vector3<f64>, gamma: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let omega = top.inertia().sharp(mu);
    (mu.cross(&omega) + top.torque(gamma), gamma.cross(&omega))
}

/// `(H, |Γ|², ⟨μ, Γ⟩)` on `so(3)* × R³`.
pub fn heavy_top_reduced_invariants(top: &HeavyTop, mu: &Vector3<f64>, gamma: &Vector3<f64>) -> [f64; 3] {
    [top.extended_hamiltonian(mu, gamma), gamma.norm_squared(), mu.dot(gamma)]
}

/// Integrates the heavy top on `so(3)* × R³`; returns `(t, μ, Γ)` samples.
pub fn heavy_top_reduced_flow(top: &HeavyTop, mu0: &Vector3<f64>, gamma0: &Vector3<f64>, cfg: &StepperConfig) -> Result<Vec<(f64, Vector3<f64>, Vector3<f64>)>> {
    let y0 = DVector::from_iterator(6, mu0.iter().chain(gamma0.iter()).copied());
    let rhs = |_t: f64, y: &DVector<f64>| -> Result<DVector<f64>> {
        let (dm, dg) = heavy_top_reduced_rhs(top, &y.fixed_rows::<3>(0).into(), &y.fixed_rows::<3>(3).into());
        Ok(DVector::from_iterator(6, dm.iter().chain(dg.iter()).copied()))
    };
    Ok(integrate_flat(rhs, &y0, cfg)?
        .into_iter()
        .map(|(t, y)| (t, y.fixed_rows::<3>(0).into(), y.fixed_rows::<3>(3).into()))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    /// `max_t |ξ(t) - J^R(ζ(t))|` between the Lie-Poisson flow and the
    /// unreduced flow.
    pub max_deviation: f64,
    /// Relative drift of `|ξ|²` along the Lie-Poisson flow.
    pub max_orbit_drift: f64,
    pub samples: usize,
}

/// Tolerance for the left-invariance test that gates [`equivalence_check`].
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Compares the Lie-Poisson flow of `h` from `J^R(init)` with `J^R` of the
/// flow of the same mechanics integrated without reduction.
pub fn equivalence_check(sys: &dyn MechanicalSystem, init: &EPState, cfg: &StepperConfig) -> Result<EquivalenceReport> {
    let defect = factorization_defects(sys, 64, 0x5eed)?.into_iter().fold(0.0_f64, f64::max);
    if !(defect < SYMMETRY_TOL) {
        return Err(Error::SymmetryBroken { defect });
    }
    let zeta = CotangentPoint::from_state(init)?;
    let xi0 = momentum_right(&zeta);
    sys.reduced_hamiltonian(&xi0).ok_or(Error::MissingHamiltonian)?;
    let counterpart = sys.unreduced_counterpart().ok_or(Error::MissingCounterpart)?;
    let (config, momentum) = sys.to_counterpart(init).ok_or(Error::MissingCounterpart)?;
    let full_init = EPState::from_momentum(counterpart.as_ref(), init.t, config, momentum)?;

    let reduced = lie_poisson_flow(sys, &xi0, cfg)?;
    let full = simulate(counterpart.as_ref(), &full_init, cfg)?;

    let c0 = xi0.coeffs().norm_squared();
    let mut max_deviation = 0.0_f64;
    let mut max_orbit_drift = 0.0_f64;
    for ((_, xi), s) in reduced.iter().zip(&full.samples) {
        let g = s.state.config.rotation().ok_or(Error::KindMismatch("SO(3) configuration"))?;
        let body = Ad_star(&g.inverse(), &s.state.mu)?;
        max_deviation = max_deviation.max((xi.coeffs() - body.coeffs()).amax());
        max_orbit_drift = max_orbit_drift.max(relative_drift((xi.coeffs().norm_squared() - c0).abs(), c0));
    }
    Ok(EquivalenceReport {
        max_deviation,
        max_orbit_drift,
        samples: reduced.len().min(full.len()),
    })
}
