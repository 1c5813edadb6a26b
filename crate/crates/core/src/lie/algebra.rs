//! Finite-dimensional Lie algebras given by structure constants.
//!
//! Vectors of the algebra and of its dual are plain coefficient vectors in a
//! fixed basis `X_1..X_r` and the dual basis. No metric is implied.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DVector, Vector3};

use crate::error::{Error, Result};

macro_rules! coeff_vector {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name(DVector<f64>);

        impl $name {
            pub fn new(coeffs: DVector<f64>) -> Self {
                Self(coeffs)
            }

            pub fn from_slice(coeffs: &[f64]) -> Self {
                Self(DVector::from_column_slice(coeffs))
            }

            pub fn zeros(dim: usize) -> Self {
                Self(DVector::zeros(dim))
            }

            /// The `k`-th basis vector of a `dim`-dimensional space.
            pub fn basis(dim: usize, k: usize) -> Self {
                let mut v = DVector::zeros(dim);
                v[k] = 1.0;
                Self(v)
            }

            pub fn from_vector3(v: &Vector3<f64>) -> Self {
                Self::from_slice(v.as_slice())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coeffs(&self) -> &DVector<f64> {
                &self.0
            }

            pub fn into_inner(self) -> DVector<f64> {
                self.0
            }

            /// Panics unless the vector has exactly three components.
            pub fn to_vector3(&self) -> Vector3<f64> {
                assert_eq!(self.0.len(), 3, "expected a 3-component vector");
                Vector3::new(self.0[0], self.0[1], self.0[2])
            }

            pub fn norm(&self) -> f64 {
                self.0.norm()
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|c| c.is_finite())
            }

            pub fn max_abs(&self) -> f64 {
                self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
            }
        }

        impl std::ops::Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(&self.0 + &rhs.0)
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl AddAssign<&$name> for $name {
            fn add_assign(&mut self, rhs: &$name) {
                self.0 += &rhs.0;
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(&self.0 - &rhs.0)
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl Mul<f64> for &$name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                $name(&self.0 * rhs)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                $name(self.0 * rhs)
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(-self.0)
            }
        }
    };
}

coeff_vector!(AlgebraVector);
coeff_vector!(DualVector);

/// Structure constants `c^i_{sk}` with `[X_s, X_k] = Σ_i c^i_{sk} X_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    name: String,
    dim: usize,
    // c^i_{sk} stored at (i * dim + s) * dim + k
    c: Vec<f64>,
}

impl StructureConstants {
    /// Builds a tensor from a generating function `f(i, s, k) = c^i_{sk}`.
    ///
    /// Only shape and finiteness are checked here; use [`Self::validate`] to
    /// check antisymmetry and the Jacobi identity.
    pub fn from_fn(name: &str, dim: usize, f: impl Fn(usize, usize, usize) -> f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be positive"));
        }
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for s in 0..dim {
                for k in 0..dim {
                    let v = f(i, s, k);
                    if !v.is_finite() {
                        return Err(Error::param("c", format!("non-finite entry at ({i},{s},{k})")));
                    }
                    c.push(v);
                }
            }
        }
        Ok(Self {
            name: name.to_string(),
            dim,
            c,
        })
    }

    /// `so(3)` in the convention where the bracket is the cross product:
    /// `c^i_{sk} = ε_{isk}`. This is the bracket of left-invariant fields,
    /// matching actions of SO(3) on the right (body frame).
    pub fn so3() -> Self {
        Self::from_fn("so(3)", 3, levi_civita).expect("so(3) constants are finite")
    }

    /// `so(3)` with the bracket of right-invariant fields, `[X, Y] = -X × Y`.
    /// This is the bracket for which fundamental fields of a left action
    /// form a Lie algebra homomorphism.
    pub fn so3_right_invariant() -> Self {
        Self::from_fn("so(3) right-invariant", 3, |i, s, k| -levi_civita(i, s, k))
            .expect("so(3) constants are finite")
    }

    /// The abelian algebra `R^n` with the zero bracket.
    pub fn abelian(n: usize) -> Result<Self> {
        Self::from_fn(&format!("R^{n}"), n, |_, _, _| 0.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, s: usize, k: usize) -> f64 {
        self.c[(i * self.dim + s) * self.dim + k]
    }

    /// Returns a copy with one entry overwritten. Intended for diagnostics.
    pub fn with_entry(&self, i: usize, s: usize, k: usize, value: f64) -> Self {
        let mut out = self.clone();
        out.c[(i * self.dim + s) * self.dim + k] = value;
        out
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for s in 0..n {
                for k in 0..n {
                    worst = worst.max((self.get(i, s, k) + self.get(i, k, s)).abs());
                }
            }
        }
        worst
    }

    /// Maximum Jacobi residual
    /// `|Σ_m c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj}|`
    /// over all `(i, j, k, l)`.
    pub fn check_jacobi(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for m in 0..n {
                            acc += self.get(m, i, j) * self.get(l, m, k)
                                + self.get(m, j, k) * self.get(l, m, i)
                                + self.get(m, k, i) * self.get(l, m, j);
                        }
                        worst = worst.max(acc.abs());
                    }
                }
            }
        }
        worst
    }

    /// Checks that the constants define a Lie algebra to within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let a = self.antisymmetry_residual();
        if a > tol {
            return Err(Error::NotAntisymmetric(a));
        }
        let j = self.check_jacobi();
        if j > tol {
            return Err(Error::param("c", format!("Jacobi residual {j:e} exceeds {tol:e}")));
        }
        Ok(())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// `[X, Y] = Σ_i (Σ_{s,k} c^i_{sk} X^s Y^k) X_i`.
    pub fn bracket(&self, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        let n = self.dim;
        let out = DVector::from_fn(n, |i, _| {
            let mut acc = 0.0;
            for s in 0..n {
                let xs = x[s];
                if xs == 0.0 {
                    continue;
                }
                for k in 0..n {
                    acc += self.get(i, s, k) * xs * y[k];
                }
            }
            acc
        });
        Ok(AlgebraVector::new(out))
    }

    /// `ad_V X = [V, X]`.
    pub fn ad(&self, v: &AlgebraVector, x: &AlgebraVector) -> Result<AlgebraVector> {
        self.bracket(v, x)
    }

    /// `ad*_V ξ`, minus the transpose of `ad_V`:
    /// `⟨ad*_V ξ, X⟩ = -⟨ξ, [V, X]⟩`, i.e. `(ad*_V ξ)_k = -Σ_{i,s} c^i_{sk} ξ_i V^s`.
    pub fn ad_star(&self, v: &AlgebraVector, xi: &DualVector) -> Result<DualVector> {
        self.check_dim(v.dim())?;
        self.check_dim(xi.dim())?;
        let n = self.dim;
        let out = DVector::from_fn(n, |k, _| {
            let mut acc = 0.0;
            for i in 0..n {
                for s in 0..n {
                    acc += self.get(i, s, k) * xi[i] * v[s];
                }
            }
            -acc
        });
        Ok(DualVector::new(out))
    }
}

/// Duality pairing `⟨ξ, X⟩ = Σ_k ξ_k X^k`.
pub fn pairing(xi: &DualVector, x: &AlgebraVector) -> Result<f64> {
    if xi.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: xi.dim(),
            found: x.dim(),
        });
    }
    Ok(xi.coeffs().dot(x.coeffs()))
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(k: usize) -> AlgebraVector {
        AlgebraVector::basis(3, k)
    }

    fn ed(k: usize) -> DualVector {
        DualVector::basis(3, k)
    }

    #[test]
    fn so3_bracket_is_cross_product() {
        let sc = StructureConstants::so3();
        assert_eq!(sc.bracket(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(sc.bracket(&e(1), &e(2)).unwrap(), e(0));
        let right = StructureConstants::so3_right_invariant();
        assert_eq!(right.bracket(&e(0), &e(1)).unwrap(), -e(2));
    }

    #[test]
    fn self_bracket_vanishes() {
        let sc = StructureConstants::so3();
        let x = AlgebraVector::from_slice(&[0.3, -1.2, 2.5]);
        assert_eq!(sc.bracket(&x, &x).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn abelian_bracket_and_coadjoint_vanish() {
        let sc = StructureConstants::abelian(4).unwrap();
        let a = AlgebraVector::basis(4, 0);
        let b = AlgebraVector::basis(4, 1);
        assert_eq!(sc.bracket(&a, &b).unwrap(), AlgebraVector::zeros(4));
        let xi = DualVector::from_slice(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(sc.ad_star(&a, &xi).unwrap(), DualVector::zeros(4));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&ed(0), &e(0)).unwrap(), 1.0);
        assert_eq!(pairing(&ed(0), &e(1)).unwrap(), 0.0);
        let xi = DualVector::from_slice(&[2.0, 0.0, 1.0]);
        let x = AlgebraVector::from_slice(&[1.0, 0.0, 1.0]);
        assert_eq!(pairing(&xi, &x).unwrap(), 3.0);
        assert!(matches!(
            pairing(&xi, &AlgebraVector::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ad_star_on_so3_basis() {
        // Oracle: solve ⟨ad*_{e1} e2*, X⟩ = -⟨e2*, e1 × X⟩ for each basis X.
        let sc = StructureConstants::so3();
        let v = Vector3::x();
        let mut expected = [0.0; 3];
        for (k, slot) in expected.iter_mut().enumerate() {
            let x = Vector3::from_fn(|i, _| if i == k { 1.0 } else { 0.0 });
            *slot = -v.cross(&x)[1];
        }
        let got = sc.ad_star(&e(0), &ed(1)).unwrap();
        assert_eq!(got.coeffs().as_slice(), &expected);
        assert_eq!(got, ed(2));
        assert_eq!(sc.ad_star(&e(0), &DualVector::zeros(3)).unwrap(), DualVector::zeros(3));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let sc = StructureConstants::so3();
        assert!(matches!(
            sc.bracket(&AlgebraVector::zeros(2), &e(0)),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
        assert!(sc.ad_star(&e(0), &DualVector::zeros(4)).is_err());
    }

    #[test]
    fn jacobi_on_known_algebras() {
        assert!(StructureConstants::so3().check_jacobi() <= 1e-15);
        assert!(StructureConstants::so3_right_invariant().check_jacobi() <= 1e-15);
        assert_eq!(StructureConstants::abelian(3).unwrap().check_jacobi(), 0.0);
    }

    #[test]
    fn jacobi_detects_perturbation() {
        let sc = StructureConstants::so3();
        // c^3_{12} += 0.1 alone; residual 0.1 from direct evaluation.
        let one_entry = sc.with_entry(2, 0, 1, 1.1);
        assert!((one_entry.check_jacobi() - 0.1).abs() < 1e-14);
        // Antisymmetric perturbation c^1_{12} = 0.1 = -c^1_{21} (still antisymmetric).
        let skew = sc.with_entry(0, 0, 1, 0.1).with_entry(0, 1, 0, -0.1);
        assert!(skew.antisymmetry_residual() == 0.0);
        assert!((skew.check_jacobi() - 0.1).abs() < 1e-14);
        assert!(skew.validate(1e-12).is_err());
        // Rescaling c^3_{12} antisymmetrically is still a Lie algebra.
        let rescaled = sc.with_entry(2, 0, 1, 1.1).with_entry(2, 1, 0, -1.1);
        assert!(rescaled.check_jacobi() < 1e-15);
    }

    #[test]
    fn validate_rejects_non_antisymmetric() {
        let sc = StructureConstants::so3().with_entry(2, 0, 1, 1.1);
        assert!(matches!(sc.validate(1e-12), Err(Error::NotAntisymmetric(_))));
        assert!(StructureConstants::so3().validate(1e-12).is_ok());
    }

    fn vec3() -> impl Strategy<Value = AlgebraVector> {
        prop::array::uniform3(-3.0..3.0f64).prop_map(|a| AlgebraVector::from_slice(&a))
    }

    proptest! {
        #[test]
        fn jacobi_identity_on_random_triples(x in vec3(), y in vec3(), z in vec3()) {
            for sc in [StructureConstants::so3(), StructureConstants::abelian(3).unwrap()] {
                let a = sc.bracket(&x, &sc.bracket(&y, &z).unwrap()).unwrap();
                let b = sc.bracket(&y, &sc.bracket(&z, &x).unwrap()).unwrap();
                let c = sc.bracket(&z, &sc.bracket(&x, &y).unwrap()).unwrap();
                prop_assert!((a + b + c).max_abs() < 1e-10);
            }
        }

        #[test]
        fn bracket_is_antisymmetric_and_bilinear(x in vec3(), y in vec3(), z in vec3(), s in -2.0..2.0f64) {
            let sc = StructureConstants::so3();
            let xy = sc.bracket(&x, &y).unwrap();
            let yx = sc.bracket(&y, &x).unwrap();
            prop_assert!((&xy + &yx).max_abs() < 1e-12);
            let lhs = sc.bracket(&(&(&x * s) + &z), &y).unwrap();
            let rhs = &(&xy * s) + &sc.bracket(&z, &y).unwrap();
            prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
        }

        #[test]
        fn ad_star_pairing_identity(v in vec3(), x in vec3(), c in prop::array::uniform3(-3.0..3.0f64)) {
            let xi = DualVector::from_slice(&c);
            for sc in [StructureConstants::so3(), StructureConstants::so3_right_invariant()] {
                let lhs = pairing(&sc.ad_star(&v, &xi).unwrap(), &x).unwrap();
                let rhs = pairing(&xi, &sc.bracket(&v, &x).unwrap()).unwrap();
                prop_assert!((lhs + rhs).abs() < 1e-12);
            }
        }
    }
}
