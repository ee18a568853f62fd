//! Mod-2 cohomology of the unordered configuration space `B(P^m, 2)`, lower
//! bounds for the symmetric topological complexity of `P^m`, a consistency
//! checker for integral cohomology, and a symmetric motion planner for
//! `P³ = SO(3)`.

pub mod borel_ring;
pub mod bpm2_ring;
pub mod error;
pub mod f2linalg;
pub mod integral_check;
pub mod so3_planner;
pub mod span;

pub use error::{AlgebraError, PlannerError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
