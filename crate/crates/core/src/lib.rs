//! Euler-Poincaré mechanics on `Q × g`.
//!
//! Lie algebra numerics, concrete mechanical systems, Lie group
//! integrators, momentum maps and reduction diagnostics, and independent
//! reference computations used to validate them.

pub mod error;
pub mod cli;
pub mod integrators;
pub mod lie;
pub mod oracle;
pub mod reduction;
pub mod systems;

pub use error::{Error, Result};
