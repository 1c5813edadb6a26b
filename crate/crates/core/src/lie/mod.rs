//! Lie algebra and Lie group numerics: bracket, `ad`, `ad*`, `Ad`, `Ad*`,
//! the duality pairing and the SO(3) exponential.

mod algebra;
mod so3;

pub use algebra::{pairing, AlgebraVector, DualVector, StructureConstants};
pub use so3::{exp_group, exp_so3, hat, reorthonormalize, vee, Ad, Ad_star, GroupElement, GROUP_TOL};
