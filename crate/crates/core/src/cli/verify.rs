//! Self-checks run by `epsim verify`.

use std::fmt::Write as _;

use nalgebra::{DVector, Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::integrators::{lie_poisson_flow, simulate, StepperConfig, Trajectory};
use crate::lie::{exp_group, hat, pairing, AlgebraVector, DualVector, GroupElement, StructureConstants};
use crate::oracle::{cartesian_pendulum_run, fd_force_check, stationarity_check, CartesianState};
use crate::reduction::{
    equivalence_check, extended_factorization_residual, hamiltonian_factorization_residual, noether_monitor, relative_drift,
};
use crate::systems::{AbelianSystem, Config, EPState, FreeRigidBody, HeavyTop, InertiaOperator, SphericalPendulum};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Algebra,
    RigidBody,
    HeavyTop,
    Pendulum,
    EulerLagrange,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [Suite::Algebra, Suite::EulerLagrange, Suite::RigidBody, Suite::HeavyTop, Suite::Pendulum];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::RigidBody => "rigid-body",
            Suite::HeavyTop => "heavy-top",
            Suite::Pendulum => "pendulum",
            Suite::EulerLagrange => "euler-lagrange",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    /// `(lo, hi)`; the check passes when `lo <= value < hi`.
    pub bounds: (f64, f64),
    pub passed: bool,
}

struct Rows {
    suite: &'static str,
    rows: Vec<CheckRow>,
}

impl Rows {
    fn new(suite: Suite) -> Self {
        Rows { suite: suite.name(), rows: Vec::new() }
    }

    fn push(&mut self, name: &str, value: f64, lo: f64, hi: f64) {
        self.rows.push(CheckRow {
            suite: self.suite,
            name: name.to_string(),
            value,
            bounds: (lo, hi),
            passed: value >= lo && value < hi,
        });
    }

    fn below(&mut self, name: &str, value: f64, hi: f64) {
        self.push(name, value, f64::NEG_INFINITY, hi);
    }

    /// Records a failing row for a computation that returned an error.
    fn guard(&mut self, name: &str, result: Result<()>) {
        if let Err(e) = result {
            self.rows.push(CheckRow {
                suite: self.suite,
                name: format!("{name}: {e}"),
                value: f64::NAN,
                bounds: (f64::NAN, f64::NAN),
                passed: false,
            });
        }
    }
}

fn max_rel_drift(traj: &Trajectory, name: &str) -> f64 {
    match traj.invariant(name) {
        Some(series) => {
            let abs = series.iter().map(|v| (v - series[0]).abs()).fold(0.0, f64::max);
            relative_drift(abs, series[0])
        }
        None => f64::NAN,
    }
}

fn series_exp(a: &Matrix3<f64>, terms: usize) -> Matrix3<f64> {
    let mut term = Matrix3::identity();
    let mut sum = Matrix3::identity();
    for k in 1..terms {
        term = term * a / k as f64;
        sum += term;
    }
    sum
}

fn algebra(rows: &mut Rows) -> Result<()> {
    let sc = StructureConstants::so3();
    rows.below("so(3) Jacobi residual", sc.check_jacobi(), 1e-12);
    rows.below("right-invariant so(3) Jacobi residual", StructureConstants::so3_right_invariant().check_jacobi(), 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let mut draw = || AlgebraVector::from_slice(&[rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
        let (v, x) = (draw(), draw());
        let xi = DualVector::new(draw().into_inner());
        let lhs = pairing(&sc.ad_star(&v, &xi)?, &x)?;
        let rhs = pairing(&xi, &sc.bracket(&v, &x)?)?;
        worst = worst.max((lhs + rhs).abs());
    }
    rows.below("ad* pairing identity", worst, 1e-12);
    let x = Vector3::new(0.3, -0.2, 0.5);
    let g = exp_group(&AlgebraVector::from_vector3(&x))?;
    rows.below("exp vs 20-term series", (g.matrix() - series_exp(&hat(&x), 20)).amax(), 1e-12);
    Ok(())
}

fn euler_lagrange(rows: &mut Rows) -> Result<()> {
    let sys = AbelianSystem::harmonic_oscillator();
    let init = EPState::from_velocity(&sys, 0.0, Config::Flat(DVector::from_element(1, 1.0)), AlgebraVector::zeros(1))?;
    let traj = simulate(&sys, &init, &StepperConfig::new(1e-3, 10.0)?)?;
    let last = traj.last().expect("non-empty trajectory");
    rows.below("oscillator |x(10) - cos 10|", (last.config.ambient()[0] - last.t.cos()).abs(), 1e-8);
    rows.below("oscillator energy drift", max_rel_drift(&traj, "H"), 1e-10);
    let x = Config::Flat(DVector::from_element(1, 0.8));
    rows.below("oscillator force residual", fd_force_check(&sys, &x, &AlgebraVector::from_slice(&[-0.6]), 1e-5)?, 1e-6);
    Ok(())
}

fn rigid_body(rows: &mut Rows) -> Result<()> {
    let sys = FreeRigidBody::new(InertiaOperator::diagonal([1.0, 2.0, 3.0])?);
    let g0 = GroupElement::from_axis_angle(&Vector3::new(0.2, -0.5, 0.9));
    let init = EPState::from_velocity(&sys, 0.0, Config::Rotation(g0), AlgebraVector::from_slice(&[1.0, 0.1, 0.1]))?;
    let cfg = StepperConfig::new(1e-3, 10.0)?;
    let traj = simulate(&sys, &init, &cfg)?;
    for name in ["H", "casimir", "JL1", "JL2", "JL3"] {
        rows.below(&format!("{name} relative drift"), max_rel_drift(&traj, name), 1e-7);
    }
    let lp = lie_poisson_flow(&sys, &init.mu, &cfg)?;
    let gap = lp
        .iter()
        .zip(&traj.samples)
        .map(|((_, xi), s)| (xi.coeffs() - s.state.mu.coeffs()).amax())
        .fold(0.0, f64::max);
    rows.below("Euler-Poincare vs Lie-Poisson", gap, 1e-9);
    let eq = equivalence_check(&sys, &init, &cfg)?;
    rows.below("reduced vs unreduced flow", eq.max_deviation, 1e-8);
    rows.below("H - h(J^R) factorization", hamiltonian_factorization_residual(&sys, 200, 5)?, 1e-10);

    let short = simulate(&sys, &init, &StepperConfig::new(1e-3, 2.0)?)?;
    let a = stationarity_check(&sys, &short, 1e-2, 3)?;
    let b = stationarity_check(&sys, &short, 1e-3, 3)?;
    rows.push("action variation ratio", a.delta_action.abs() / b.delta_action.abs(), 80.0, 120.0);
    Ok(())
}

fn heavy_top(rows: &mut Rows) -> Result<()> {
    let top = HeavyTop::new(InertiaOperator::diagonal([1.0, 1.5, 2.0])?, 1.0, 9.81, Vector3::new(0.05, 0.0, 0.3))?;
    let g0 = GroupElement::from_axis_angle(&Vector3::new(0.4, 0.1, 0.0));
    let init = EPState::from_velocity(&top, 0.0, Config::Rotation(g0), AlgebraVector::from_slice(&[0.3, -0.2, 4.0]))?;
    let traj = simulate(&top, &init, &StepperConfig::new(1e-3, 5.0)?)?;
    let report = noether_monitor(&traj, &top)?;
    for stat in &report.invariants {
        rows.below(&format!("{} relative drift", stat.name), stat.max_rel_drift, 1e-7);
    }
    rows.below("H - h_ext(J, K) factorization", extended_factorization_residual(&top, 200, 11)?, 1e-10);
    rows.below("force residual", fd_force_check(&top, &Config::Rotation(g0), &init.v, 1e-5)?, 1e-6);
    Ok(())
}

fn pendulum(rows: &mut Rows) -> Result<()> {
    let g = Vector3::new(0.0, 0.0, -9.81);
    let sys = SphericalPendulum::new(1.0, 1.0, g)?;
    let (x0, v0) = (Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.0, 1.2, 0.5));
    let init = EPState::from_velocity(&sys, 0.0, Config::Sphere(x0), AlgebraVector::from_vector3(&sys.minimal_norm_lift(&x0, &v0)))?;
    let cfg = StepperConfig::new(1e-3, 5.0)?;
    let traj = simulate(&sys, &init, &cfg)?;
    let reference = cartesian_pendulum_run(&CartesianState::new(x0, v0, 1.0)?, &g, &cfg)?;
    let pos = traj
        .samples
        .iter()
        .zip(&reference.states)
        .map(|(s, c)| s.state.config.sphere_point().map_or(f64::NAN, |x| (x - c.x).norm()))
        .fold(0.0, f64::max);
    rows.below("position vs Cartesian oracle", pos, 1e-5);
    rows.below("pi_vertical relative drift", max_rel_drift(&traj, "pi_vertical"), 1e-7);
    rows.below("energy relative drift", max_rel_drift(&traj, "H"), 1e-7);
    rows.below("force residual", fd_force_check(&sys, &Config::Sphere(x0), &init.v, 1e-5)?, 1e-6);
    Ok(())
}

fn run_one(suite: Suite) -> Vec<CheckRow> {
    let mut rows = Rows::new(suite);
    let result = match suite {
        Suite::Algebra => algebra(&mut rows),
        Suite::EulerLagrange => euler_lagrange(&mut rows),
        Suite::RigidBody => rigid_body(&mut rows),
        Suite::HeavyTop => heavy_top(&mut rows),
        Suite::Pendulum => pendulum(&mut rows),
        Suite::All => unreachable!("expanded by run_suite"),
    };
    rows.guard("suite aborted", result);
    rows.rows
}

/// Runs one suite, or all of them on separate threads; rows come back in
/// a fixed order either way.
pub fn run_suite(suite: Suite) -> Vec<CheckRow> {
    if suite != Suite::All {
        return run_one(suite);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = Suite::CONCRETE.iter().map(|&s| scope.spawn(move || run_one(s))).collect();
        handles
            .into_iter()
            .zip(Suite::CONCRETE)
            .flat_map(|(h, s)| {
                h.join().unwrap_or_else(|_| {
                    vec![CheckRow {
                        suite: s.name(),
                        name: "suite panicked".into(),
                        value: f64::NAN,
                        bounds: (f64::NAN, f64::NAN),
                        passed: false,
                    }]
                })
            })
            .collect()
    })
}

pub fn format_table(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let bound = match r.bounds {
            (lo, hi) if lo == f64::NEG_INFINITY => format!("< {hi:.0e}"),
            (lo, _) if lo.is_nan() => "-".to_string(),
            (lo, hi) => format!("in [{lo}, {hi})"),
        };
        let _ = writeln!(
            out,
            "{} {:<15} {:<width$} {:>11.3e} {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.suite,
            r.name,
            r.value,
            bound
        );
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", rows.len(), failed);
    out
}
