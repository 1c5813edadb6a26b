use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{Action, Config, MechanicalSystem};
use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, DualVector, StructureConstants};

/// `L(x, ẋ)` on `R^n × R^n`.
pub type LagrangianFn = Arc<dyn Fn(&DVector<f64>, &DVector<f64>) -> f64 + Send + Sync>;
/// A map `(x, y) ↦ R^n`, used for partial gradients and the Legendre inverse.
pub type VectorFn = Arc<dyn Fn(&DVector<f64>, &DVector<f64>) -> DVector<f64> + Send + Sync>;

const FD_STEP: f64 = 1e-6;

/// `Q = R^n` acted on by the abelian algebra `R^n` through translations.
///
/// The anchor is the identity `(x, X) ↦ X`, so `V = ẋ` and the
/// Euler-Poincaré equation is the Euler-Lagrange equation. Partials and the
/// Legendre inverse default to central differences and Newton iteration
/// when no closed form is supplied.
#[derive(Clone)]
pub struct AbelianSystem {
    name: String,
    n: usize,
    sc: StructureConstants,
    lagrangian: LagrangianFn,
    d1: Option<VectorFn>,
    d2: Option<VectorFn>,
    inverse: Option<VectorFn>,
    reduction: bool,
    parameters: BTreeMap<String, f64>,
}

impl fmt::Debug for AbelianSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AbelianSystem")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("analytic_d1", &self.d1.is_some())
            .field("analytic_d2", &self.d2.is_some())
            .finish()
    }
}

impl AbelianSystem {
    pub fn new(name: &str, n: usize, lagrangian: LagrangianFn) -> Result<Self> {
        Ok(Self {
            name: name.to_string(),
            n,
            sc: StructureConstants::abelian(n)?,
            lagrangian,
            d1: None,
            d2: None,
            inverse: None,
            reduction: false,
            parameters: BTreeMap::new(),
        })
    }

    /// Supplies closed forms for `d₁L̄` and `d₂L̄`.
    pub fn with_partials(mut self, d1: VectorFn, d2: VectorFn) -> Self {
        self.d1 = Some(d1);
        self.d2 = Some(d2);
        self
    }

    /// Supplies a closed form for `(x, μ) ↦ V` with `d₂L̄(x, V) = μ`.
    pub fn with_legendre_inverse(mut self, inverse: VectorFn) -> Self {
        self.inverse = Some(inverse);
        self
    }

    /// Declares `L` independent of `x`.
    pub fn with_lagrangian_reduction(mut self, on: bool) -> Self {
        self.reduction = on;
        self
    }

    pub fn with_parameter(mut self, name: &str, value: f64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    /// `L = ½ẋ² - ½x²` on `R`.
    pub fn harmonic_oscillator() -> Self {
        Self::new("abelian-oscillator", 1, Arc::new(|x, v| 0.5 * v[0] * v[0] - 0.5 * x[0] * x[0]))
            .expect("n = 1")
            .with_partials(Arc::new(|x, _| -x.clone()), Arc::new(|_, v| v.clone()))
            .with_legendre_inverse(Arc::new(|_, mu| mu.clone()))
    }

    /// `L = ½|ẋ|²` on `R^n`.
    pub fn free_particle(n: usize) -> Result<Self> {
        Ok(Self::new("free-particle", n, Arc::new(|_, v| 0.5 * v.norm_squared()))?
            .with_partials(Arc::new(|x, _| DVector::zeros(x.len())), Arc::new(|_, v| v.clone()))
            .with_legendre_inverse(Arc::new(|_, mu| mu.clone()))
            .with_lagrangian_reduction(true))
    }

    fn flat<'a>(&self, x: &'a Config) -> &'a DVector<f64> {
        match x {
            Config::Flat(p) => p,
            _ => panic!("flat configuration expected"),
        }
    }

    fn l(&self, x: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (self.lagrangian)(x, v)
    }

    fn fd_gradient(&self, f: impl Fn(&DVector<f64>) -> f64, at: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(at.len(), |k, _| {
            let mut plus = at.clone();
            let mut minus = at.clone();
            plus[k] += FD_STEP;
            minus[k] -= FD_STEP;
            (f(&plus) - f(&minus)) / (2.0 * FD_STEP)
        })
    }

    fn momentum(&self, x: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        match &self.d2 {
            Some(d2) => d2(x, v),
            None => self.fd_gradient(|w| self.l(x, w), v),
        }
    }

    /// Newton iteration on `d₂L̄(x, V) = μ` with a difference Jacobian.
    fn newton_inverse(&self, x: &DVector<f64>, mu: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let h = 1e-5;
        let mut v = mu.clone();
        for _ in 0..50 {
            let r = self.momentum(x, &v) - mu;
            if r.amax() < 1e-13 * (1.0 + mu.amax()) {
                break;
            }
            let mut jac = DMatrix::zeros(n, n);
            for k in 0..n {
                let mut plus = v.clone();
                let mut minus = v.clone();
                plus[k] += h;
                minus[k] -= h;
                let col = (self.momentum(x, &plus) - self.momentum(x, &minus)) / (2.0 * h);
                jac.set_column(k, &col);
            }
            match jac.lu().solve(&r) {
                Some(step) => v -= step,
                None => break,
            }
        }
        v
    }
}

impl MechanicalSystem for AbelianSystem {
    fn id(&self) -> &str {
        &self.name
    }

    fn algebra(&self) -> &StructureConstants {
        &self.sc
    }

    fn action(&self) -> Action {
        Action::Translation
    }

    fn config_dim(&self) -> usize {
        self.n
    }

    fn validate_config(&self, x: &Config) -> Result<()> {
        match x {
            Config::Flat(p) if p.len() == self.n => {
                if p.iter().all(|c| c.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::OffManifold {
                        what: "flat configuration",
                        residual: f64::INFINITY,
                    })
                }
            }
            Config::Flat(p) => Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.len(),
            }),
            _ => Err(Error::KindMismatch("translation")),
        }
    }

    fn lbar(&self, x: &Config, v: &AlgebraVector) -> f64 {
        self.l(self.flat(x), v.coeffs())
    }

    fn d1_lbar(&self, x: &Config, v: &AlgebraVector) -> DVector<f64> {
        let p = self.flat(x);
        match &self.d1 {
            Some(d1) => d1(p, v.coeffs()),
            None => self.fd_gradient(|y| self.l(y, v.coeffs()), p),
        }
    }

    fn d2_lbar(&self, x: &Config, v: &AlgebraVector) -> DualVector {
        DualVector::new(self.momentum(self.flat(x), v.coeffs()))
    }

    fn legendre_inverse(&self, x: &Config, mu: &DualVector) -> AlgebraVector {
        let p = self.flat(x);
        let v = match &self.inverse {
            Some(inv) => inv(p, mu.coeffs()),
            None => self.newton_inverse(p, mu.coeffs()),
        };
        AlgebraVector::new(v)
    }

    fn lagrangian_reduction(&self) -> bool {
        self.reduction
    }

    fn invariant_names(&self) -> Vec<String> {
        vec!["H".to_string()]
    }

    fn invariant_values(&self, x: &Config, mu: &DualVector) -> Vec<f64> {
        vec![self.energy(x, mu)]
    }

    fn parameters(&self) -> BTreeMap<String, f64> {
        self.parameters.clone()
    }
}
