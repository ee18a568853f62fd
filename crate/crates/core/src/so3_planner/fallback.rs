//! Functional-sign planner: rule `j` is the symmetric bilinear form
//! `(a, b) ↦ ⟨a, M_j b⟩` of largest magnitude, and its sign picks the lifts
//! joined by a great-circle arc.

use super::path::{PathKind, PlannedPath, Segment, Strategy};
use super::quaternion::{ensure_distinct, neg, Quat, Rotation, COINCIDENCE_TOLERANCE};
use crate::error::PlannerError;

pub const FALLBACK_RULES: usize = 10;

/// Index pairs `(k, l)`, `k ≤ l`, in lexicographic order. Pair `(k, k)` is
/// `E_kk`; pair `(k, l)` is `E_kl + E_lk`.
pub const SYMMETRIC_BASIS: [(usize, usize); FALLBACK_RULES] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// `⟨a, M_j b⟩`. Symmetric in `a` and `b` bit for bit.
pub fn functional(j: usize, a: &Quat, b: &Quat) -> f64 {
    let (k, l) = SYMMETRIC_BASIS[j];
    if k == l {
        a[k] * b[k]
    } else {
        a[k] * b[l] + a[l] * b[k]
    }
}

pub fn functional_values(a: &Quat, b: &Quat) -> [f64; FALLBACK_RULES] {
    std::array::from_fn(|j| functional(j, a, b))
}

/// `argmax_j |⟨â, M_j b̂⟩|`, lowest index on ties.
pub fn select_rule(a: &Rotation, b: &Rotation) -> Result<usize, PlannerError> {
    ensure_distinct(a, b)?;
    let values = functional_values(&a.quat(), &b.quat());
    let mut best = 0;
    for j in 1..FALLBACK_RULES {
        if values[j].abs() > values[best].abs() {
            best = j;
        }
    }
    if values[best] == 0.0 {
        return Err(PlannerError::DegenerateEmbedding);
    }
    Ok(best)
}

pub fn plan_fallback(a: &Rotation, b: &Rotation) -> Result<PlannedPath, PlannerError> {
    let j = select_rule(a, b)?;
    let (start, mut end) = (a.quat(), b.quat());
    if functional(j, &start, &end) < 0.0 {
        end = neg(&end);
    }
    Ok(PlannedPath::new(
        PathKind::SlerpArc,
        Strategy::Fallback,
        j,
        [*a, *b],
        Segment::slerp(start, end),
        COINCIDENCE_TOLERANCE,
    ))
}
