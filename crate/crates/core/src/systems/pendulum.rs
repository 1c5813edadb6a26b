use std::collections::BTreeMap;

use nalgebra::{DVector, Vector3};

use super::{positive, Action, Config, MechanicalSystem};
use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, DualVector, StructureConstants};

/// Tolerance on `| |x| - R |` for sphere configurations.
pub const SPHERE_TOL: f64 = 1e-9;

/// Spherical pendulum: a point mass on a sphere of radius `R` acted on by
/// `SO(3)` on the left, anchor `φ(x, Ω) = Ω × x`.
///
/// Here `r = 3 > n = 2`: the velocity lift is defined modulo the isotropy
/// algebra `g_x = span{x}`. Velocities are lifted to the Euclidean
/// orthogonal complement of `g_x`, `Ω = x × v / R²`, and the evolved
/// momentum is `π = d₂L̄(x, Ω) = mR²Ω - m(x·Ω)x`.
#[derive(Debug, Clone)]
pub struct SphericalPendulum {
    mass: f64,
    radius: f64,
    gravity: Vector3<f64>,
    sc: StructureConstants,
}

impl SphericalPendulum {
    pub fn new(mass: f64, radius: f64, gravity: Vector3<f64>) -> Result<Self> {
        positive("mass", mass)?;
        positive("radius", radius)?;
        if !gravity.iter().all(|c| c.is_finite()) {
            return Err(Error::param("gravity", "must be finite"));
        }
        Ok(Self {
            mass,
            radius,
            gravity,
            sc: StructureConstants::so3_right_invariant(),
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn gravity(&self) -> &Vector3<f64> {
        &self.gravity
    }

    /// Unit vector along gravity (`e₃` downward when gravity vanishes).
    pub fn gravity_direction(&self) -> Vector3<f64> {
        let n = self.gravity.norm();
        if n > 0.0 {
            self.gravity / n
        } else {
            -Vector3::z()
        }
    }

    /// Minimal-norm lift of the tangent vector `v` at `x`.
    pub fn minimal_norm_lift(&self, x: &Vector3<f64>, v: &Vector3<f64>) -> Vector3<f64> {
        x.cross(v) / (self.radius * self.radius)
    }

    fn point<'a>(&self, x: &'a Config) -> &'a Vector3<f64> {
        x.sphere_point().expect("sphere configuration")
    }
}

impl MechanicalSystem for SphericalPendulum {
    fn id(&self) -> &str {
        "spherical-pendulum"
    }

    fn algebra(&self) -> &StructureConstants {
        &self.sc
    }

    fn action(&self) -> Action {
        Action::Left
    }

    fn config_dim(&self) -> usize {
        2
    }

    fn validate_config(&self, x: &Config) -> Result<()> {
        match x {
            Config::Sphere(p) => {
                let residual = (p.norm() - self.radius).abs();
                if !(residual < SPHERE_TOL * self.radius.max(1.0)) {
                    return Err(Error::OffManifold {
                        what: "sphere configuration",
                        residual,
                    });
                }
                Ok(())
            }
            _ => Err(Error::KindMismatch("sphere configuration")),
        }
    }

    fn lbar(&self, x: &Config, v: &AlgebraVector) -> f64 {
        let p = self.point(x);
        let omega = v.to_vector3();
        let r2 = self.radius * self.radius;
        0.5 * self.mass * (r2 * omega.norm_squared() - omega.dot(p).powi(2)) + self.mass * self.gravity.dot(p)
    }

    fn d1_lbar(&self, x: &Config, v: &AlgebraVector) -> DVector<f64> {
        let p = self.point(x);
        let omega = v.to_vector3();
        let grad = -omega * (self.mass * omega.dot(p)) + self.gravity * self.mass;
        DVector::from_column_slice(grad.as_slice())
    }

    fn d2_lbar(&self, x: &Config, v: &AlgebraVector) -> DualVector {
        let p = self.point(x);
        let omega = v.to_vector3();
        let r2 = self.radius * self.radius;
        DualVector::from_vector3(&(omega * (self.mass * r2) - p * (self.mass * p.dot(&omega))))
    }

    fn legendre_inverse(&self, x: &Config, mu: &DualVector) -> AlgebraVector {
        let p = self.point(x);
        let pi = mu.to_vector3();
        let r2 = self.radius * self.radius;
        let tangential = pi - p * (pi.dot(p) / r2);
        AlgebraVector::from_vector3(&(tangential / (self.mass * r2)))
    }

    fn invariant_names(&self) -> Vec<String> {
        ["H", "pi_vertical", "radius"].map(String::from).to_vec()
    }

    fn invariant_values(&self, x: &Config, mu: &DualVector) -> Vec<f64> {
        let p = self.point(x);
        vec![
            self.energy(x, mu),
            mu.to_vector3().dot(&self.gravity_direction()),
            p.norm(),
        ]
    }

    fn parameters(&self) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        out.insert("mass".into(), self.mass);
        out.insert("radius".into(), self.radius);
        for (i, c) in self.gravity.iter().enumerate() {
            out.insert(format!("gravity_{}", i + 1), *c);
        }
        out
    }
}
