use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("structure constants are not antisymmetric (residual {0:e})")]
    NotAntisymmetric(f64),

    #[error("matrix is not antisymmetric (residual {0:e})")]
    NotSkew(f64),

    #[error("{what} is off the manifold (residual {residual:e})")]
    OffManifold { what: &'static str, residual: f64 },

    #[error("matrix too far from SO(3) to reorthonormalize (|g^T g - I|_F = {0:e})")]
    TooFarFromGroup(f64),

    #[error("configuration kind does not match the {0} action")]
    KindMismatch(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("system has no reduced Hamiltonian on the dual of its algebra")]
    MissingHamiltonian,

    #[error("system has no unreduced formulation to compare against")]
    MissingCounterpart,

    #[error("Hamiltonian does not factor through the reduced momentum (defect {defect:e})")]
    SymmetryBroken { defect: f64 },

    #[error("non-finite derivative at t = {t}")]
    NonFinite { t: f64 },

    #[error("numerical blow-up at t = {t}: |value| = {value:e} exceeds 1e12")]
    BlowUp { t: f64, value: f64 },

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("trajectory too short: {found} samples, need at least {needed}")]
    TrajectoryTooShort { found: usize, needed: usize },

    #[error("subalgebra basis is degenerate (smallest singular value {0:e})")]
    DegenerateBasis(f64),
}

impl Error {
    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}
