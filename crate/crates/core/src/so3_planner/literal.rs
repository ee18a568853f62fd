//! The chart composite `g ∘ Ψ ∘ σ_i`, evaluated exactly as written. Its
//! endpoints are the frame points `[u], [v]`, which are recorded but not
//! corrected.

use serde::{Deserialize, Serialize};

use super::embedding::{haefliger_h, sigma_order, EMBEDDING_DIM};
use super::path::{PathKind, PlannedPath, Segment, Strategy};
use super::quaternion::{add, dot, ensure_distinct, neg, norm, scale, sub, Quat, Rotation, COINCIDENCE_TOLERANCE};
use crate::error::PlannerError;

/// An orthonormal pair `(u, v)` in `R⁴`, meaningful up to
/// `(u, v) ~ (v, u) ~ (−u, −v)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub u: Quat,
    pub v: Quat,
}

fn close(a: &Quat, b: &Quat, tol: f64) -> bool {
    norm(&sub(a, b)) < tol
}

impl Frame {
    pub fn equivalent(&self, other: &Frame, tol: f64) -> bool {
        let candidates = [
            (other.u, other.v),
            (other.v, other.u),
            (neg(&other.u), neg(&other.v)),
            (neg(&other.v), neg(&other.u)),
        ];
        candidates.iter().any(|(u, v)| close(&self.u, u, tol) && close(&self.v, v, tol))
    }

    pub fn orthogonality_defect(&self) -> f64 {
        dot(&self.u, &self.v).abs()
    }
}

fn frame_from_lifts(x: &Quat, y: &Quat) -> Frame {
    let s = add(x, y);
    let d = sub(x, y);
    Frame { u: scale(&s, 1.0 / norm(&s)), v: scale(&d, 1.0 / norm(&d)) }
}

/// `Ψ` evaluated on the stored lifts of `x` and `y`.
pub fn psi(x: &Rotation, y: &Rotation) -> Result<Frame, PlannerError> {
    ensure_distinct(x, y)?;
    Ok(frame_from_lifts(&x.quat(), &y.quat()))
}

/// `Ψ` with `ŷ` chosen so that `⟨x̂, ŷ⟩ ≥ 0`. Changing the lift of `x` then
/// flips both frame vectors, so the projected chord path depends only on
/// the rotations.
pub fn psi_canonical(x: &Rotation, y: &Rotation) -> Result<Frame, PlannerError> {
    ensure_distinct(x, y)?;
    let (xq, mut yq) = (x.quat(), y.quat());
    if dot(&xq, &yq) < 0.0 {
        yq = neg(&yq);
    }
    Ok(frame_from_lifts(&xq, &yq))
}

/// `g([u, v])`: the projected chord from `[u]` to `[v]`.
pub fn chord_path_g(frame: &Frame) -> Segment {
    Segment::chord(frame.u, frame.v)
}

/// The composite path for rule `i`. When the caller's order disagrees with
/// `σ_i`'s, the path is traversed backwards so the assignment is symmetric.
pub fn plan_literal(a: &Rotation, b: &Rotation, i: usize) -> Result<PlannedPath, PlannerError> {
    if i >= EMBEDDING_DIM {
        return Err(PlannerError::RuleOutOfRange(i));
    }
    let (first, second) = sigma_order(i, a, b)?;
    let frame = psi_canonical(&first, &second)?;
    let mut segment = chord_path_g(&frame);
    if haefliger_h(a, b)?[i] < 0.0 {
        segment = segment.reversed();
    }
    Ok(PlannedPath::new(
        PathKind::CompositeLiteral,
        Strategy::Literal,
        i,
        [*a, *b],
        segment,
        COINCIDENCE_TOLERANCE,
    ))
}
