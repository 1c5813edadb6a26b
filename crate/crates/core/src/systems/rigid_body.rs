use std::collections::BTreeMap;

use nalgebra::DVector;

use super::{check_rotation, row_major, Action, Config, EPState, InertiaOperator, MechanicalSystem};
use crate::error::Result;
use crate::lie::{AlgebraVector, DualVector, StructureConstants};

/// Free rigid body with a fixed point, in body-frame variables.
///
/// `Q = G = SO(3)` acted on by right translations, so `V` is the body
/// angular velocity `Ω`, `L̄(x, Ω) = ½⟨I♭Ω, Ω⟩` does not depend on `x`, and
/// `μ = I♭Ω` is the body angular momentum.
#[derive(Debug, Clone)]
pub struct FreeRigidBody {
    inertia: InertiaOperator,
    sc: StructureConstants,
}

impl FreeRigidBody {
    pub fn new(inertia: InertiaOperator) -> Self {
        let sys = Self {
            inertia,
            sc: StructureConstants::so3(),
        };
        debug_assert!(sys.sc.validate(1e-12).is_ok());
        sys
    }

    pub fn inertia(&self) -> &InertiaOperator {
        &self.inertia
    }

    /// The coadjoint-orbit invariant `|ξ|²`.
    pub fn casimir(xi: &DualVector) -> f64 {
        xi.coeffs().norm_squared()
    }
}

impl MechanicalSystem for FreeRigidBody {
    fn id(&self) -> &str {
        "free-rigid-body"
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

    fn lbar(&self, _x: &Config, v: &AlgebraVector) -> f64 {
        let omega = v.to_vector3();
        0.5 * self.inertia.flat(&omega).dot(&omega)
    }

    fn d1_lbar(&self, _x: &Config, _v: &AlgebraVector) -> DVector<f64> {
        DVector::zeros(9)
    }

    fn d2_lbar(&self, _x: &Config, v: &AlgebraVector) -> DualVector {
        DualVector::from_vector3(&self.inertia.flat(&v.to_vector3()))
    }

    fn legendre_inverse(&self, _x: &Config, mu: &DualVector) -> AlgebraVector {
        AlgebraVector::from_vector3(&self.inertia.sharp(&mu.to_vector3()))
    }

    fn lagrangian_reduction(&self) -> bool {
        true
    }

    fn reduced_hamiltonian(&self, xi: &DualVector) -> Option<f64> {
        let m = xi.to_vector3();
        Some(0.5 * m.dot(&self.inertia.sharp(&m)))
    }

    fn reduced_hamiltonian_gradient(&self, xi: &DualVector) -> Option<AlgebraVector> {
        Some(AlgebraVector::from_vector3(&self.inertia.sharp(&xi.to_vector3())))
    }

    fn invariant_names(&self) -> Vec<String> {
        ["H", "casimir", "JL1", "JL2", "JL3"].map(String::from).to_vec()
    }

    fn invariant_values(&self, x: &Config, mu: &DualVector) -> Vec<f64> {
        let g = x.rotation().expect("rotation configuration");
        let spatial = g.act(&mu.to_vector3());
        vec![
            self.energy(x, mu),
            Self::casimir(mu),
            spatial.x,
            spatial.y,
            spatial.z,
        ]
    }

    fn parameters(&self) -> BTreeMap<String, f64> {
        inertia_parameters(&self.inertia)
    }

    fn unreduced_counterpart(&self) -> Option<Box<dyn MechanicalSystem>> {
        Some(Box::new(SpatialRigidBody::new(self.inertia)))
    }

    fn to_counterpart(&self, state: &EPState) -> Option<(Config, DualVector)> {
        let g = state.config.rotation()?;
        Some((state.config.clone(), DualVector::from_vector3(&g.act(&state.mu.to_vector3()))))
    }
}

/// The free rigid body written with the left action of SO(3) on itself:
/// `V` is the space-frame angular velocity `ω`, and
/// `L̄(x, ω) = ½⟨I♭ x^T ω, x^T ω⟩` depends on `x`.
///
/// Its momentum `d₂L̄ = x I♭ x^T ω` is the spatial angular momentum. Used as
/// the unreduced reference flow for reduction checks.
#[derive(Debug, Clone)]
pub struct SpatialRigidBody {
    inertia: InertiaOperator,
    sc: StructureConstants,
}

impl SpatialRigidBody {
    pub fn new(inertia: InertiaOperator) -> Self {
        Self {
            inertia,
            sc: StructureConstants::so3_right_invariant(),
        }
    }
}

impl MechanicalSystem for SpatialRigidBody {
    fn id(&self) -> &str {
        "free-rigid-body-spatial"
    }

    fn algebra(&self) -> &StructureConstants {
        &self.sc
    }

    fn action(&self) -> Action {
        Action::Left
    }

    fn config_dim(&self) -> usize {
        3
    }

    fn validate_config(&self, x: &Config) -> Result<()> {
        check_rotation(x).map(|_| ())
    }

    fn lbar(&self, x: &Config, v: &AlgebraVector) -> f64 {
        let g = x.rotation().expect("rotation configuration");
        let body = g.matrix().transpose() * v.to_vector3();
        0.5 * self.inertia.flat(&body).dot(&body)
    }

    fn d1_lbar(&self, x: &Config, v: &AlgebraVector) -> DVector<f64> {
        let g = x.rotation().expect("rotation configuration");
        let omega = v.to_vector3();
        let body_momentum = self.inertia.flat(&(g.matrix().transpose() * omega));
        row_major(&(omega * body_momentum.transpose()))
    }

    fn d2_lbar(&self, x: &Config, v: &AlgebraVector) -> DualVector {
        let g = x.rotation().expect("rotation configuration");
        let body = g.matrix().transpose() * v.to_vector3();
        DualVector::from_vector3(&g.act(&self.inertia.flat(&body)))
    }

    fn legendre_inverse(&self, x: &Config, mu: &DualVector) -> AlgebraVector {
        let g = x.rotation().expect("rotation configuration");
        let body = g.matrix().transpose() * mu.to_vector3();
        AlgebraVector::from_vector3(&g.act(&self.inertia.sharp(&body)))
    }

    fn invariant_names(&self) -> Vec<String> {
        ["H", "JL1", "JL2", "JL3"].map(String::from).to_vec()
    }

    fn invariant_values(&self, x: &Config, mu: &DualVector) -> Vec<f64> {
        vec![self.energy(x, mu), mu[0], mu[1], mu[2]]
    }

    fn parameters(&self) -> BTreeMap<String, f64> {
        inertia_parameters(&self.inertia)
    }
}

pub(super) fn inertia_parameters(inertia: &InertiaOperator) -> BTreeMap<String, f64> {
    let m = inertia.matrix();
    let mut out = BTreeMap::new();
    for i in 0..3 {
        for j in i..3 {
            out.insert(format!("inertia_{}{}", i + 1, j + 1), m[(i, j)]);
        }
    }
    out
}
