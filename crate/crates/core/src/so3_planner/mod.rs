//! Symmetric motion planning on `SO(3) = P³` through the embedding
//! `P³ → R⁵` and its normalized-difference map.

mod embedding;
mod fallback;
mod literal;
mod path;
mod quaternion;
mod verify;

pub use embedding::{
    applicable_rules, chart0_condition, embed_f, haefliger_h, sigma_order, strongest_rule, ApplicableRule,
    EmbeddedPoint, EMBEDDING_DIM, LITERAL_RULES,
};
pub use fallback::{functional, functional_values, plan_fallback, select_rule, FALLBACK_RULES, SYMMETRIC_BASIS};
pub use literal::{chord_path_g, plan_literal, psi, psi_canonical, Frame};
pub use path::{sample_parameters, PathExport, PathKind, PlannedPath, Segment, Strategy};
pub use quaternion::{Quat, Rotation, UnitQuaternion, COINCIDENCE_TOLERANCE};
pub use verify::{verify_planner, ContinuityProbe, Contracts, VerificationReport, VerifyConfig};

use crate::error::PlannerError;

/// Plans with the given strategy. The chart composite uses the strongest
/// applicable rule.
pub fn plan(a: &Rotation, b: &Rotation, strategy: Strategy) -> Result<PlannedPath, PlannerError> {
    match strategy {
        Strategy::Fallback => plan_fallback(a, b),
        Strategy::Literal => plan_literal(a, b, strongest_rule(a, b)?.index),
    }
}
