use std::collections::BTreeMap;

use nalgebra::{DVector, Vector3};

use super::rigid_body::inertia_parameters;
use super::{check_rotation, positive, row_major, Action, Config, InertiaOperator, MechanicalSystem};
use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, DualVector, GroupElement, StructureConstants};

/// Heavy top: a rigid body with a fixed point in a uniform gravity field.
///
/// Body-frame variables as for [`super::FreeRigidBody`], with
/// `L̄(x, Ω) = ½⟨I♭Ω, Ω⟩ - U(x)` and `U(x) = -⟨P, x a⟩`, where
/// `P = -m g e₃` is the weight and `a` the body-frame center of mass.
#[derive(Debug, Clone)]
pub struct HeavyTop {
    inertia: InertiaOperator,
    mass: f64,
    gravity: f64,
    com: Vector3<f64>,
    sc: StructureConstants,
}

impl HeavyTop {
    /// The upward vertical in space.
    pub const VERTICAL: Vector3<f64> = Vector3::new(0.0, 0.0, 1.0);

    pub fn new(inertia: InertiaOperator, mass: f64, gravity: f64, com: Vector3<f64>) -> Result<Self> {
        positive("mass", mass)?;
        if !(gravity >= 0.0) || !gravity.is_finite() {
            return Err(Error::param("gravity", "must be non-negative and finite"));
        }
        if !(com.norm() > 0.0) || !com.iter().all(|c| c.is_finite()) {
            return Err(Error::param("com", "center-of-mass offset must be non-zero"));
        }
        Ok(Self {
            inertia,
            mass,
            gravity,
            com,
            sc: StructureConstants::so3(),
        })
    }

    pub fn inertia(&self) -> &InertiaOperator {
        &self.inertia
    }

    pub fn com(&self) -> &Vector3<f64> {
        &self.com
    }

    /// `m g`, the magnitude of the weight.
    pub fn weight(&self) -> f64 {
        self.mass * self.gravity
    }

    /// The weight `P` as a space-frame vector.
    pub fn weight_vector(&self) -> Vector3<f64> {
        -Self::VERTICAL * self.weight()
    }

    /// Advected vertical in the body frame, `Γ = x^T e₃`.
    pub fn gamma(x: &GroupElement) -> Vector3<f64> {
        x.matrix().transpose() * Self::VERTICAL
    }

    pub fn potential(&self, x: &GroupElement) -> f64 {
        -self.weight_vector().dot(&x.act(&self.com))
    }

    /// Gravity torque in the body frame, `m g Γ × a`.
    pub fn torque(&self, gamma: &Vector3<f64>) -> Vector3<f64> {
        gamma.cross(&self.com) * self.weight()
    }

    /// Hamiltonian on the extended reduced space `g* × V*`:
    /// `h_ext(ν, k) = ½⟨ν, I♭⁻¹ν⟩ + m g ⟨a, k⟩`.
    pub fn extended_hamiltonian(&self, nu: &Vector3<f64>, k: &Vector3<f64>) -> f64 {
        0.5 * nu.dot(&self.inertia.sharp(nu)) + self.weight() * self.com.dot(k)
    }
}

impl MechanicalSystem for HeavyTop {
    fn id(&self) -> &str {
        "heavy-top"
    }

    fn algebra(&self) -> &StructureConstants {
        &self.sc
    }

    fn action(&self) -> Action {
        Action::Right
    }

    fn config_dim(&self) -> usize {
        3
    }

    fn validate_config(&self, x: &Config) -> Result<()> {
        check_rotation(x).map(|_| ())
    }

    fn lbar(&self, x: &Config, v: &AlgebraVector) -> f64 {
        let g = x.rotation().expect("rotation configuration");
        let omega = v.to_vector3();
        0.5 * self.inertia.flat(&omega).dot(&omega) - self.potential(g)
    }

    fn d1_lbar(&self, _x: &Config, _v: &AlgebraVector) -> DVector<f64> {
        // L̄ ⊃ ⟨P, x a⟩ = Σ_ij P_i x_ij a_j
        row_major(&(self.weight_vector() * self.com.transpose()))
    }

    fn d2_lbar(&self, _x: &Config, v: &AlgebraVector) -> DualVector {
        DualVector::from_vector3(&self.inertia.flat(&v.to_vector3()))
    }

    fn legendre_inverse(&self, _x: &Config, mu: &DualVector) -> AlgebraVector {
        AlgebraVector::from_vector3(&self.inertia.sharp(&mu.to_vector3()))
    }

    fn invariant_names(&self) -> Vec<String> {
        ["H", "gamma_norm2", "mu_dot_gamma", "JL_vertical"].map(String::from).to_vec()
    }

    fn invariant_values(&self, x: &Config, mu: &DualVector) -> Vec<f64> {
        let g = x.rotation().expect("rotation configuration");
        let gamma = Self::gamma(g);
        let m = mu.to_vector3();
        vec![
            self.energy(x, mu),
            gamma.norm_squared(),
            m.dot(&gamma),
            g.act(&m).dot(&Self::VERTICAL),
        ]
    }

    fn parameters(&self) -> BTreeMap<String, f64> {
        let mut p = inertia_parameters(&self.inertia);
        p.insert("mass".into(), self.mass);
        p.insert("gravity".into(), self.gravity);
        for (i, c) in self.com.iter().enumerate() {
            p.insert(format!("com_{}", i + 1), *c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::exp_so3;
    use crate::systems::{check_partials, omega_force};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn top(com: Vector3<f64>) -> HeavyTop {
        HeavyTop::new(InertiaOperator::diagonal([1.0, 1.5, 2.0]).unwrap(), 1.0, 9.81, com).unwrap()
    }

    #[test]
    fn potential_at_identity() {
        let (m, g, l) = (2.0, 9.81, 0.5);
        let sys = HeavyTop::new(InertiaOperator::diagonal([1.0, 1.0, 1.0]).unwrap(), m, g, Vector3::new(0.0, 0.0, l)).unwrap();
        assert_eq!(sys.weight_vector(), Vector3::new(0.0, 0.0, -m * g));
        assert!((sys.potential(&GroupElement::identity()) - m * g * l).abs() < 1e-14);
    }

    #[test]
    fn upright_equilibrium_has_no_force() {
        let sys = top(Vector3::new(0.0, 0.0, 0.3));
        let x = Config::Rotation(GroupElement::identity());
        let f = omega_force(&sys, &x, &AlgebraVector::zeros(3)).unwrap();
        assert!(f.max_abs() < 1e-15);
        assert_eq!(sys.torque(&Vector3::z()), Vector3::zeros());
    }

    #[test]
    fn force_is_gravity_torque() {
        let sys = top(Vector3::new(0.1, -0.2, 0.4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = exp_so3(&Vector3::from_fn(|_, _| rng.gen_range(-3.0..3.0)));
            let x = Config::Rotation(g);
            let f = sys.force(&x, &AlgebraVector::from_slice(&[0.3, 0.1, -0.2])).to_vector3();
            let expected = sys.torque(&HeavyTop::gamma(&g));
            assert!((f - expected).amax() < 1e-13);
        }
    }

    #[test]
    fn partials_match_finite_differences() {
        let sys = top(Vector3::new(0.1, -0.2, 0.4));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = Config::Rotation(exp_so3(&Vector3::from_fn(|_, _| rng.gen_range(-3.0..3.0))));
            let v = AlgebraVector::from_slice(&[rng.gen_range(-2.0..2.0), 0.4, rng.gen_range(-2.0..2.0)]);
            let (r1, r2) = check_partials(&sys, &x, &v, 1e-6).unwrap();
            assert!(r1 < 1e-6 && r2 < 1e-6, "{r1} {r2}");
        }
    }

    #[test]
    fn invalid_parameters() {
        let i = InertiaOperator::diagonal([1.0, 1.0, 1.0]).unwrap();
        assert!(HeavyTop::new(i, -1.0, 9.81, Vector3::z()).is_err());
        assert!(HeavyTop::new(i, 1.0, 9.81, Vector3::zeros()).is_err());
    }
}
