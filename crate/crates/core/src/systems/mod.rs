//! Mechanical systems written in Poincaré's variables `(x, X) ∈ Q × g`.
//!
//! A system supplies the anchor map `φ(x, X) = X_Q(x)` (through its
//! [`Action`]), the reduced Lagrangian `L̄ = L ∘ φ`, its partial
//! differentials, and the inverse of `X ↦ d₂L̄(x, X)` on a complement of the
//! isotropy algebra. Everything else (force map, energy) is derived.

mod abelian;
mod heavy_top;
mod pendulum;
mod rigid_body;

use std::collections::BTreeMap;

use nalgebra::{DVector, Matrix3, SymmetricEigen, Vector3};

use crate::error::{Error, Result};
use crate::lie::{exp_so3, hat, pairing, AlgebraVector, DualVector, GroupElement, StructureConstants, GROUP_TOL};

pub use abelian::AbelianSystem;
pub use heavy_top::HeavyTop;
pub use pendulum::SphericalPendulum;
pub use rigid_body::{FreeRigidBody, SpatialRigidBody};

/// A point of the configuration manifold `Q`.
#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    /// `Q = SO(3)`.
    Rotation(GroupElement),
    /// A point on a sphere of radius `|x|` in `R^3`.
    Sphere(Vector3<f64>),
    /// `Q = R^n`.
    Flat(DVector<f64>),
}

impl Config {
    /// Coordinates in the ambient vector space (rotation matrices row-major).
    pub fn ambient(&self) -> DVector<f64> {
        match self {
            Config::Rotation(g) => DVector::from_row_slice(g.matrix().transpose().as_slice()),
            Config::Sphere(x) => DVector::from_column_slice(x.as_slice()),
            Config::Flat(x) => x.clone(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Config::Rotation(_) => 9,
            Config::Sphere(_) => 3,
            Config::Flat(x) => x.len(),
        }
    }

    pub fn rotation(&self) -> Option<&GroupElement> {
        match self {
            Config::Rotation(g) => Some(g),
            _ => None,
        }
    }

    pub fn sphere_point(&self) -> Option<&Vector3<f64>> {
        match self {
            Config::Sphere(x) => Some(x),
            _ => None,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.ambient().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.ambient().iter().all(|c| c.is_finite())
    }
}

/// How the algebra acts on the configuration space, i.e. which fundamental
/// vector fields the anchor map uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// SO(3) acting on itself on the right, `x ↦ x·exp(sX)`; fundamental
    /// fields are left-invariant (body-frame velocities).
    Right,
    /// SO(3) acting on the left, `x ↦ exp(sX)·x`, on itself or on a sphere;
    /// fundamental fields are right-invariant (space-frame velocities).
    Left,
    /// `R^n` acting on itself by translations.
    Translation,
}

impl Action {
    /// The point reached from `x` by the one-parameter flow of `theta` at time 1.
    pub fn apply(&self, theta: &AlgebraVector, x: &Config) -> Result<Config> {
        match (self, x) {
            (Action::Right, Config::Rotation(g)) => Ok(Config::Rotation(g.compose(&exp_so3(&theta.to_vector3())))),
            (Action::Left, Config::Rotation(g)) => Ok(Config::Rotation(exp_so3(&theta.to_vector3()).compose(g))),
            (Action::Left, Config::Sphere(p)) => Ok(Config::Sphere(exp_so3(&theta.to_vector3()).act(p))),
            (Action::Translation, Config::Flat(p)) => {
                if p.len() != theta.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: p.len(),
                        found: theta.dim(),
                    });
                }
                Ok(Config::Flat(p + theta.coeffs()))
            }
            (Action::Right, _) => Err(Error::KindMismatch("right SO(3)")),
            (Action::Left, _) => Err(Error::KindMismatch("left SO(3)")),
            (Action::Translation, _) => Err(Error::KindMismatch("translation")),
        }
    }

    /// Value of the fundamental vector field `X_Q(x)` in ambient coordinates.
    pub fn fundamental_field(&self, v: &AlgebraVector, x: &Config) -> Result<DVector<f64>> {
        match (self, x) {
            (Action::Right, Config::Rotation(g)) => Ok(row_major(&(g.matrix() * hat(&v.to_vector3())))),
            (Action::Left, Config::Rotation(g)) => Ok(row_major(&(hat(&v.to_vector3()) * g.matrix()))),
            (Action::Left, Config::Sphere(p)) => Ok(DVector::from_column_slice(v.to_vector3().cross(p).as_slice())),
            (Action::Translation, Config::Flat(_)) => Ok(v.coeffs().clone()),
            (Action::Right, _) => Err(Error::KindMismatch("right SO(3)")),
            (Action::Left, _) => Err(Error::KindMismatch("left SO(3)")),
            (Action::Translation, _) => Err(Error::KindMismatch("translation")),
        }
    }
}

pub(crate) fn row_major(m: &Matrix3<f64>) -> DVector<f64> {
    DVector::from_row_slice(m.transpose().as_slice())
}

/// A state `(γ, V)` of Poincaré's equations, with the momentum
/// `μ = d₂L̄(γ, V)` cached alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct EPState {
    pub t: f64,
    pub config: Config,
    pub v: AlgebraVector,
    pub mu: DualVector,
}

impl EPState {
    /// Builds a state from `(γ, V)`, computing `μ = d₂L̄(γ, V)`.
    pub fn from_velocity(sys: &dyn MechanicalSystem, t: f64, config: Config, v: AlgebraVector) -> Result<Self> {
        sys.validate_config(&config)?;
        check_algebra_dim(sys, v.dim())?;
        let mu = sys.d2_lbar(&config, &v);
        Ok(Self { t, config, v, mu })
    }

    /// Builds a state from `(γ, μ)`, recovering `V` by the system's
    /// Legendre inverse.
    pub fn from_momentum(sys: &dyn MechanicalSystem, t: f64, config: Config, mu: DualVector) -> Result<Self> {
        sys.validate_config(&config)?;
        check_algebra_dim(sys, mu.dim())?;
        let v = sys.legendre_inverse(&config, &mu);
        Ok(Self { t, config, v, mu })
    }

    pub fn max_abs(&self) -> f64 {
        self.config.max_abs().max(self.v.max_abs()).max(self.mu.max_abs())
    }

    pub fn is_finite(&self) -> bool {
        self.config.is_finite() && self.v.is_finite() && self.mu.is_finite()
    }
}

fn check_algebra_dim(sys: &dyn MechanicalSystem, found: usize) -> Result<()> {
    let expected = sys.algebra().dim();
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A symmetric positive-definite inertia form `I♭ : g → g*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InertiaOperator {
    matrix: Matrix3<f64>,
    inverse: Matrix3<f64>,
}

impl InertiaOperator {
    pub fn new(matrix: Matrix3<f64>) -> Result<Self> {
        let asym = (matrix - matrix.transpose()).abs().max();
        if !(asym < 1e-12) {
            return Err(Error::param("inertia", format!("not symmetric (residual {asym:e})")));
        }
        let eig = SymmetricEigen::new(matrix);
        if !eig.eigenvalues.iter().all(|&l| l > 0.0 && l.is_finite()) {
            return Err(Error::param("inertia", "not positive definite"));
        }
        let inverse = matrix.try_inverse().ok_or_else(|| Error::param("inertia", "singular"))?;
        Ok(Self { matrix, inverse })
    }

    pub fn diagonal(d: [f64; 3]) -> Result<Self> {
        Self::new(Matrix3::from_diagonal(&Vector3::from(d)))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    /// `I♭ Ω`.
    pub fn flat(&self, omega: &Vector3<f64>) -> Vector3<f64> {
        self.matrix * omega
    }

    /// `(I♭)^{-1} μ`.
    pub fn sharp(&self, mu: &Vector3<f64>) -> Vector3<f64> {
        self.inverse * mu
    }
}

/// A mechanical system expressed on `Q × g`.
///
/// Methods other than [`MechanicalSystem::validate_config`] assume their
/// inputs have already been validated for this system; the free functions
/// in this module ([`omega_force`], [`anchor`]) validate first.
pub trait MechanicalSystem: Send + Sync {
    /// Short identifier used in reports (`free-rigid-body`, ...).
    fn id(&self) -> &str;

    fn algebra(&self) -> &StructureConstants;

    fn action(&self) -> Action;

    /// Dimension `n` of the configuration manifold.
    fn config_dim(&self) -> usize;

    fn validate_config(&self, x: &Config) -> Result<()>;

    /// `L̄(x, X)`.
    fn lbar(&self, x: &Config, v: &AlgebraVector) -> f64;

    /// `d₁L̄(x, X)` as a gradient in ambient coordinates; only its pairing
    /// with tangent vectors is meaningful.
    fn d1_lbar(&self, x: &Config, v: &AlgebraVector) -> DVector<f64>;

    /// `d₂L̄(x, X) ∈ g*`.
    fn d2_lbar(&self, x: &Config, v: &AlgebraVector) -> DualVector;

    /// Inverse of `X ↦ d₂L̄(x, X)` restricted to the chosen complement of
    /// the isotropy algebra `g_x`.
    fn legendre_inverse(&self, x: &Config, mu: &DualVector) -> AlgebraVector;

    /// True when `L̄` does not depend on `x`, so the momentum equation can be
    /// solved before reconstruction.
    fn lagrangian_reduction(&self) -> bool {
        false
    }

    /// `h(ξ)` on `g*` when the Hamiltonian factors through the momentum.
    fn reduced_hamiltonian(&self, _xi: &DualVector) -> Option<f64> {
        None
    }

    /// `dh(ξ) ∈ g`. Defaults to central differences of
    /// [`MechanicalSystem::reduced_hamiltonian`].
    fn reduced_hamiltonian_gradient(&self, xi: &DualVector) -> Option<AlgebraVector> {
        self.reduced_hamiltonian(xi)?;
        let eps = 1e-6;
        let n = xi.dim();
        let mut grad = DVector::zeros(n);
        for k in 0..n {
            let step = DualVector::basis(n, k) * eps;
            let plus = self.reduced_hamiltonian(&(xi + &step))?;
            let minus = self.reduced_hamiltonian(&(xi - &step))?;
            grad[k] = (plus - minus) / (2.0 * eps);
        }
        Some(AlgebraVector::new(grad))
    }

    /// Names of the monitored invariants, in the order returned by
    /// [`MechanicalSystem::invariant_values`].
    fn invariant_names(&self) -> Vec<String>;

    fn invariant_values(&self, x: &Config, mu: &DualVector) -> Vec<f64>;

    fn parameters(&self) -> BTreeMap<String, f64>;

    /// The same mechanics written with the opposite action on `G`, when
    /// available. Used to cross-check reduced flows against an unreduced
    /// integration.
    fn unreduced_counterpart(&self) -> Option<Box<dyn MechanicalSystem>> {
        None
    }

    /// Maps a reduced state of this system to the counterpart's variables.
    fn to_counterpart(&self, _state: &EPState) -> Option<(Config, DualVector)> {
        None
    }

    /// `r > n`: the lift of a velocity to `g` is not unique.
    fn is_underdetermined(&self) -> bool {
        self.algebra().dim() > self.config_dim()
    }

    /// Poincaré's force map `Ω_k(x, X) = Σ_i ∂L̄/∂x^i (X_k)_Q^i(x)`.
    fn force(&self, x: &Config, v: &AlgebraVector) -> DualVector {
        let d1 = self.d1_lbar(x, v);
        let r = self.algebra().dim();
        let comps = DVector::from_fn(r, |k, _| {
            let field = self
                .action()
                .fundamental_field(&AlgebraVector::basis(r, k), x)
                .expect("validated configuration");
            d1.dot(&field)
        });
        DualVector::new(comps)
    }

    /// Energy `⟨μ, V⟩ - L̄(x, V)` with `V` the Legendre inverse of `μ`.
    fn energy(&self, x: &Config, mu: &DualVector) -> f64 {
        let v = self.legendre_inverse(x, mu);
        mu.coeffs().dot(v.coeffs()) - self.lbar(x, &v)
    }
}

/// The anchor map `φ(x, X) = X_Q(x)`, in ambient coordinates.
pub fn anchor(sys: &dyn MechanicalSystem, x: &Config, v: &AlgebraVector) -> Result<DVector<f64>> {
    sys.validate_config(x)?;
    check_algebra_dim(sys, v.dim())?;
    sys.action().fundamental_field(v, x)
}

/// Poincaré's force map `Ω = p_{g*} ∘ φ^T ∘ d₁L̄` at `(x, X)`.
pub fn omega_force(sys: &dyn MechanicalSystem, x: &Config, v: &AlgebraVector) -> Result<DualVector> {
    sys.validate_config(x)?;
    check_algebra_dim(sys, v.dim())?;
    Ok(sys.force(x, v))
}

/// Residuals of the analytic partial differentials against central
/// differences with step `h`: `(d₁ along fundamental fields, d₂)`.
pub fn check_partials(sys: &dyn MechanicalSystem, x: &Config, v: &AlgebraVector, h: f64) -> Result<(f64, f64)> {
    sys.validate_config(x)?;
    check_algebra_dim(sys, v.dim())?;
    let r = sys.algebra().dim();
    let action = sys.action();
    let d1 = sys.d1_lbar(x, v);
    let d2 = sys.d2_lbar(x, v);
    let mut res1 = 0.0_f64;
    let mut res2 = 0.0_f64;
    for k in 0..r {
        let ek = AlgebraVector::basis(r, k);
        let plus = action.apply(&(&ek * h), x)?;
        let minus = action.apply(&(&ek * -h), x)?;
        let fd = (sys.lbar(&plus, v) - sys.lbar(&minus, v)) / (2.0 * h);
        let analytic = d1.dot(&action.fundamental_field(&ek, x)?);
        res1 = res1.max((fd - analytic).abs());

        let fd2 = (sys.lbar(x, &(v + &(&ek * h))) - sys.lbar(x, &(v - &(&ek * h)))) / (2.0 * h);
        res2 = res2.max((fd2 - d2[k]).abs());
    }
    Ok((res1, res2))
}

/// Residual of fiberwise linearity of the anchor at `x` for the pair `(a, b)`.
pub fn anchor_linearity_residual(sys: &dyn MechanicalSystem, x: &Config, a: &AlgebraVector, b: &AlgebraVector, s: f64) -> Result<f64> {
    let lhs = anchor(sys, x, &(&(a * s) + b))?;
    let rhs = anchor(sys, x, a)? * s + anchor(sys, x, b)?;
    Ok((lhs - rhs).abs().max())
}

/// Energy identity `h(d₂L̄) + L̄ - ⟨d₂L̄, X⟩` for systems with a reduced
/// Hamiltonian. Vanishes when `H` is constant along `𝓛 ∘ X_Q(Q)`.
pub fn hamiltonian_identity_residual(sys: &dyn MechanicalSystem, x: &Config, v: &AlgebraVector) -> Result<f64> {
    let mu = sys.d2_lbar(x, v);
    let h = sys.reduced_hamiltonian(&mu).ok_or(Error::MissingHamiltonian)?;
    Ok((h + sys.lbar(x, v) - pairing(&mu, v)?).abs())
}

pub(crate) fn check_rotation(x: &Config) -> Result<&GroupElement> {
    match x {
        Config::Rotation(g) => {
            let residual = g.orthogonality_residual();
            if !(residual < GROUP_TOL) || g.matrix().determinant() <= 0.0 {
                return Err(Error::OffManifold {
                    what: "rotation configuration",
                    residual,
                });
            }
            Ok(g)
        }
        _ => Err(Error::KindMismatch("SO(3) configuration")),
    }
}

pub(crate) fn positive(name: &str, value: f64) -> Result<f64> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::param(name, format!("must be positive and finite, got {value}")));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inertia_validation() {
        assert!(InertiaOperator::diagonal([1.0, 2.0, 3.0]).is_ok());
        assert!(InertiaOperator::diagonal([1.0, -2.0, 3.0]).is_err());
        let mut m = Matrix3::identity();
        m[(0, 1)] = 0.1;
        assert!(InertiaOperator::new(m).is_err());
    }

    #[test]
    fn action_kind_mismatch() {
        let x = Config::Flat(DVector::zeros(3));
        assert!(Action::Right.apply(&AlgebraVector::zeros(3), &x).is_err());
        assert!(Action::Left.fundamental_field(&AlgebraVector::zeros(3), &x).is_err());
        let s = Config::Sphere(Vector3::x());
        assert!(Action::Translation.apply(&AlgebraVector::zeros(3), &s).is_err());
    }

    #[test]
    fn ambient_rotation_is_row_major() {
        let m = Matrix3::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0);
        let x = Config::Rotation(GroupElement::from_matrix_unchecked(m));
        let a = x.ambient();
        assert_eq!(a.as_slice(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
    }
}
