//! The rotation group SO(3) and its algebra identified with `(R^3, ×)`.

use nalgebra::{Matrix3, Vector3};

use super::algebra::{AlgebraVector, DualVector};
use crate::error::{Error, Result};

/// Tolerance for group membership, `|R^T R - I|_F`.
pub const GROUP_TOL: f64 = 1e-9;

/// Below this angle the Rodrigues coefficients are evaluated by series.
const SMALL_ANGLE: f64 = 1e-4;

/// `hat(v) · w = v × w`.
pub fn hat(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Inverse of [`hat`]; rejects matrices that are not antisymmetric to 1e-12.
pub fn vee(m: &Matrix3<f64>) -> Result<Vector3<f64>> {
    let residual = (m + m.transpose()).abs().max();
    if residual > 1e-12 {
        return Err(Error::NotSkew(residual));
    }
    Ok(Vector3::new(m[(2, 1)], m[(0, 2)], m[(1, 0)]))
}

/// An element of SO(3), stored as a rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement(Matrix3<f64>);

impl GroupElement {
    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Checks `|R^T R - I|_F < 1e-9` and `det R > 0`.
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let residual = orthogonality_residual(&m);
        if !(residual < GROUP_TOL) || m.determinant() <= 0.0 {
            return Err(Error::OffManifold {
                what: "rotation matrix",
                residual,
            });
        }
        Ok(Self(m))
    }

    #[cfg(test)]
    pub(crate) fn from_matrix_unchecked(m: Matrix3<f64>) -> Self {
        Self(m)
    }

    /// Rotation by `|v|` radians about `v`.
    pub fn from_axis_angle(v: &Vector3<f64>) -> Self {
        exp_so3(v)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn act(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.0 * v
    }

    pub fn orthogonality_residual(&self) -> f64 {
        orthogonality_residual(&self.0)
    }
}

fn orthogonality_residual(m: &Matrix3<f64>) -> f64 {
    (m.transpose() * m - Matrix3::identity()).norm()
}

/// Returns `(sin θ / θ, (1 - cos θ) / θ²)`.
fn rodrigues_coeffs(theta: f64) -> (f64, f64) {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        (1.0 - t2 / 6.0 + t2 * t2 / 120.0, 0.5 - t2 / 24.0 + t2 * t2 / 720.0)
    } else {
        (theta.sin() / theta, (1.0 - theta.cos()) / (theta * theta))
    }
}

pub fn exp_so3(v: &Vector3<f64>) -> GroupElement {
    let (a, b) = rodrigues_coeffs(v.norm());
    let k = hat(v);
    GroupElement(Matrix3::identity() + k * a + k * k * b)
}

/// Group exponential of an `so(3)` element given by its coefficient vector.
pub fn exp_group(x: &AlgebraVector) -> Result<GroupElement> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    Ok(exp_so3(&x.to_vector3()))
}

fn check3(n: usize) -> Result<()> {
    if n != 3 {
        return Err(Error::KindMismatch("SO(3) adjoint"));
    }
    Ok(())
}

/// `Ad_g X`; for SO(3) in vector form this is `R X`.
#[allow(non_snake_case)]
pub fn Ad(g: &GroupElement, x: &AlgebraVector) -> Result<AlgebraVector> {
    check3(x.dim())?;
    Ok(AlgebraVector::from_vector3(&g.act(&x.to_vector3())))
}

/// `Ad*_g ξ = (Ad_{g^{-1}})^T ξ`; for SO(3) this is again `R ξ`.
#[allow(non_snake_case)]
pub fn Ad_star(g: &GroupElement, xi: &DualVector) -> Result<DualVector> {
    check3(xi.dim())?;
    let inv = g.inverse();
    // (R^{-1})^T ξ computed literally from the definition.
    Ok(DualVector::from_vector3(&(inv.matrix().transpose() * xi.to_vector3())))
}

/// Projects a nearly orthogonal matrix onto SO(3) (polar factor via SVD).
///
/// Input must satisfy `|g^T g - I|_F < 0.1`.
pub fn reorthonormalize(m: &Matrix3<f64>) -> Result<GroupElement> {
    let residual = orthogonality_residual(m);
    if !(residual < 0.1) {
        return Err(Error::TooFarFromGroup(residual));
    }
    if residual == 0.0 && m.determinant() > 0.0 {
        return Ok(GroupElement(*m));
    }
    let svd = m.svd(true, true);
    let (u, vt) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
    let mut r = u * vt;
    if r.determinant() < 0.0 {
        return Err(Error::OffManifold {
            what: "reorthonormalize input (orientation reversing)",
            residual,
        });
    }
    // one Newton polar step tightens orthogonality to rounding level
    r = (r + r.try_inverse().expect("rotation is invertible").transpose()) * 0.5;
    Ok(GroupElement(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    /// Truncated power series of the matrix exponential.
    fn series_exp(m: &Matrix3<f64>, terms: usize) -> Matrix3<f64> {
        let mut sum = Matrix3::identity();
        let mut term = Matrix3::identity();
        for n in 1..terms {
            term = term * m / n as f64;
            sum += term;
        }
        sum
    }

    #[test]
    fn hat_vee_examples() {
        assert_eq!(hat(&Vector3::z()) * Vector3::x(), Vector3::y());
        let v = Vector3::new(1.0, 2.0, 3.0);
        assert_eq!(vee(&hat(&v)).unwrap(), v);
        assert_eq!(hat(&v).transpose(), -hat(&v));
        let bad = Matrix3::identity();
        assert!(matches!(vee(&bad), Err(Error::NotSkew(_))));
    }

    #[test]
    fn exp_examples() {
        let id = exp_group(&AlgebraVector::zeros(3)).unwrap();
        assert_eq!(id, GroupElement::identity());

        let q = exp_group(&AlgebraVector::from_slice(&[0.0, 0.0, FRAC_PI_2])).unwrap();
        assert_relative_eq!(q.act(&Vector3::x()), Vector3::y(), epsilon = 1e-15);

        let x = Vector3::new(0.3, -0.2, 0.5);
        let r = exp_so3(&x);
        let reference = series_exp(&hat(&x), 20);
        assert!((r.matrix() - reference).abs().max() < 1e-12);
    }

    #[test]
    fn exp_small_angle_branch_matches_series() {
        for scale in [1e-5, 3e-5, 9.9e-5, 1.01e-4, 1e-3] {
            let x = Vector3::new(0.6, -0.8, 0.0) * scale;
            let r = exp_so3(&x);
            let reference = series_exp(&hat(&x), 12);
            assert!((r.matrix() - reference).abs().max() < 1e-16 + 1e-15);
            assert!(r.orthogonality_residual() < 1e-15);
        }
    }

    #[test]
    fn exp_rejects_wrong_dimension() {
        assert!(exp_group(&AlgebraVector::zeros(2)).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let x = AlgebraVector::basis(3, 0);
        let xi = DualVector::from_slice(&[0.5, -1.0, 2.0]);
        let id = GroupElement::identity();
        assert_eq!(Ad(&id, &x).unwrap(), x);
        assert_eq!(Ad_star(&id, &xi).unwrap(), xi);

        let q = exp_so3(&Vector3::new(0.0, 0.0, FRAC_PI_2));
        let ad = Ad(&q, &x).unwrap();
        assert!((ad - AlgebraVector::basis(3, 1)).max_abs() < 1e-15);

        assert!(matches!(
            Ad(&q, &AlgebraVector::zeros(4)),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn reorthonormalize_examples() {
        let r = exp_so3(&Vector3::new(0.4, 1.1, -0.3));
        let fixed = reorthonormalize(r.matrix()).unwrap();
        assert!((fixed.matrix() - r.matrix()).norm() < 1e-14);

        let sym = Matrix3::new(1.0, 0.3, -0.2, 0.3, -0.5, 0.7, -0.2, 0.7, 0.9);
        let perturbed = Matrix3::identity() + sym * 1e-6;
        let out = reorthonormalize(&perturbed).unwrap();
        // Polar factor of I + εS is I (S symmetric), so the result stays within ~|εS|.
        assert!((out.matrix() - Matrix3::identity()).norm() < 1e-12);
        assert!((out.matrix() - perturbed).norm() < 1e-5);
        assert!(out.orthogonality_residual() < 1e-14);

        let far = Matrix3::identity() * 1.2;
        assert!(matches!(reorthonormalize(&far), Err(Error::TooFarFromGroup(_))));
    }

    #[test]
    fn group_membership_is_checked() {
        assert!(GroupElement::new(Matrix3::identity() * 1.01).is_err());
        assert!(GroupElement::new(-Matrix3::identity()).is_err());
        assert!(GroupElement::new(*exp_so3(&Vector3::new(1.0, 2.0, 0.5)).matrix()).is_ok());
    }

    fn vec3(bound: f64) -> impl Strategy<Value = Vector3<f64>> {
        prop::array::uniform3(-bound..bound).prop_map(|a| Vector3::new(a[0], a[1], a[2]))
    }

    proptest! {
        #[test]
        fn exp_is_homomorphic_on_lines(v in vec3(1.8), s in -2.0..2.0f64, t in -2.0..2.0f64) {
            let v = if v.norm() > std::f64::consts::PI { v * (std::f64::consts::PI / v.norm()) } else { v };
            let lhs = exp_so3(&(v * (s + t)));
            let rhs = exp_so3(&(v * s)).compose(&exp_so3(&(v * t)));
            prop_assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-10);
            prop_assert!(lhs.orthogonality_residual() < GROUP_TOL);
            prop_assert!(lhs.matrix().determinant() > 0.0);
        }

        #[test]
        fn coadjoint_preserves_pairing(w in vec3(3.0), x in vec3(3.0), c in vec3(3.0)) {
            let g = exp_so3(&w);
            let xa = AlgebraVector::from_vector3(&x);
            let xi = DualVector::from_vector3(&c);
            let lhs = crate::lie::pairing(&Ad_star(&g, &xi).unwrap(), &Ad(&g, &xa).unwrap()).unwrap();
            let rhs = crate::lie::pairing(&xi, &xa).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn coadjoint_is_a_left_action(a in vec3(3.0), b in vec3(3.0), c in vec3(3.0)) {
            let (g, h) = (exp_so3(&a), exp_so3(&b));
            let xi = DualVector::from_vector3(&c);
            let lhs = Ad_star(&g.compose(&h), &xi).unwrap();
            let rhs = Ad_star(&g, &Ad_star(&h, &xi).unwrap()).unwrap();
            prop_assert!((lhs - rhs).max_abs() < 1e-12);
        }

        #[test]
        fn reorthonormalize_is_idempotent(w in vec3(3.0), p in prop::array::uniform9(-1e-3..1e-3f64)) {
            let m = exp_so3(&w).matrix() + Matrix3::from_row_slice(&p);
            let once = reorthonormalize(&m).unwrap();
            let twice = reorthonormalize(once.matrix()).unwrap();
            prop_assert!(once.orthogonality_residual() < 1e-14);
            prop_assert!((once.matrix() - twice.matrix()).norm() < 1e-14);
        }
    }
}
