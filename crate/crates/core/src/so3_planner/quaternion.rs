use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::PlannerError;

/// Rotations closer than this (in radians) are treated as the same state.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-9;

pub type Quat = [f64; 4];

pub(crate) fn dot(a: &Quat, b: &Quat) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &Quat) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn neg(a: &Quat) -> Quat {
    a.map(|x| -x)
}

pub(crate) fn sub(a: &Quat, b: &Quat) -> Quat {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub(crate) fn add(a: &Quat, b: &Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub(crate) fn scale(a: &Quat, s: f64) -> Quat {
    a.map(|x| x * s)
}

/// A point of `S³ ⊂ R⁴`, i.e. a pair of complex numbers `(z0, z1)` with
/// `z0 = q0 + i q1`, `z1 = q2 + i q3` and `|z0|² + |z1|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitQuaternion(Quat);

impl UnitQuaternion {
    pub fn new(q: Quat) -> Result<Self, PlannerError> {
        if q.iter().any(|x| !x.is_finite()) {
            return Err(PlannerError::InvalidQuaternion(format!("{q:?} is not finite")));
        }
        let n = norm(&q);
        if n < 1e-12 {
            return Err(PlannerError::InvalidQuaternion(format!("{q:?} has zero norm")));
        }
        Ok(Self(scale(&q, 1.0 / n)))
    }

    /// Normalizes a vector known to be nonzero.
    pub(crate) fn normalized(q: Quat) -> Self {
        Self::new(q).expect("nonzero finite quaternion")
    }

    pub fn components(&self) -> Quat {
        self.0
    }

    pub fn z0(&self) -> (f64, f64) {
        (self.0[0], self.0[1])
    }

    pub fn z1(&self) -> (f64, f64) {
        (self.0[2], self.0[3])
    }

    pub fn negated(&self) -> Self {
        Self(neg(&self.0))
    }
}

/// Chordal distance in `P³`: `min(|p − q|, |p + q|)` over the two lifts.
pub(crate) fn projective_chord(p: &Quat, q: &Quat) -> (f64, f64) {
    let d_minus = norm(&sub(p, q));
    let d_plus = norm(&add(p, q));
    (d_minus.min(d_plus), d_minus.max(d_plus))
}

/// An element of `SO(3) = P³`: a unit quaternion up to sign.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Rotation(UnitQuaternion);

impl Rotation {
    pub fn new(q: Quat) -> Result<Self, PlannerError> {
        UnitQuaternion::new(q).map(Self)
    }

    pub fn from_unit(q: UnitQuaternion) -> Self {
        Self(q)
    }

    pub fn identity() -> Self {
        Self(UnitQuaternion([1.0, 0.0, 0.0, 0.0]))
    }

    /// The stored lift. All maps defined on rotations are independent of
    /// which of the two lifts this is.
    pub fn lift(&self) -> UnitQuaternion {
        self.0
    }

    pub fn quat(&self) -> Quat {
        self.0 .0
    }

    /// Rotation angle of `self⁻¹ · other`, in `[0, π]`.
    pub fn distance(&self, other: &Rotation) -> f64 {
        let (near, far) = projective_chord(&self.quat(), &other.quat());
        // atan2(|p−q|, |p+q|) is half the angle between the lifts.
        4.0 * near.atan2(far)
    }

    pub fn approx_eq(&self, other: &Rotation, tol: f64) -> bool {
        self.distance(other) < tol
    }

    /// Lift with its first nonzero coordinate positive, for display.
    pub fn display_lift(&self) -> Quat {
        let q = self.quat();
        match q.iter().find(|x| **x != 0.0) {
            Some(x) if *x < 0.0 => neg(&q),
            _ => q,
        }
    }

    /// Uniformly distributed rotation (Shoemake's subgroup algorithm).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Rotation {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        let u3: f64 = rng.gen();
        let tau = std::f64::consts::TAU;
        let (s1, s2) = ((1.0 - u1).sqrt(), u1.sqrt());
        Rotation::new([s1 * (tau * u2).sin(), s1 * (tau * u2).cos(), s2 * (tau * u3).sin(), s2 * (tau * u3).cos()])
            .expect("unit by construction")
    }
}

impl PartialEq for Rotation {
    fn eq(&self, other: &Self) -> bool {
        let (p, q) = (self.quat(), other.quat());
        p == q || p == neg(&q)
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.display_lift();
        write!(f, "[{:.6}, {:.6}, {:.6}, {:.6}]", q[0], q[1], q[2], q[3])
    }
}

pub(crate) fn ensure_distinct(a: &Rotation, b: &Rotation) -> Result<(), PlannerError> {
    let distance = a.distance(b);
    if distance < COINCIDENCE_TOLERANCE {
        Err(PlannerError::CoincidentStates { distance })
    } else {
        Ok(())
    }
}
