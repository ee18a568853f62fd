use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::quaternion::{add, norm, scale, sub, Quat, Rotation, UnitQuaternion};

/// Below this arc angle slerp degenerates to normalized linear interpolation.
const SMALL_ANGLE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Literal,
    #[default]
    Fallback,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Literal => "literal",
            Strategy::Fallback => "fallback",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(Strategy::Literal),
            "fallback" => Ok(Strategy::Fallback),
            other => Err(format!("unknown strategy {other:?} (expected literal or fallback)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathKind {
    SlerpArc,
    CompositeLiteral,
}

/// A parameterized curve in `S³`, projected to `P³` on sampling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Segment {
    /// Great-circle arc from `start` to `end` of angle `theta`.
    Slerp { start: Quat, end: Quat, theta: f64 },
    /// `t ↦ (t·end + (1−t)·start) / ‖…‖`.
    Chord { start: Quat, end: Quat },
}

impl Segment {
    pub fn slerp(start: Quat, end: Quat) -> Segment {
        let theta = 2.0 * norm(&sub(&start, &end)).atan2(norm(&add(&start, &end)));
        Segment::Slerp { start, end, theta }
    }

    pub fn chord(start: Quat, end: Quat) -> Segment {
        Segment::Chord { start, end }
    }

    pub fn start(&self) -> Quat {
        match *self {
            Segment::Slerp { start, .. } | Segment::Chord { start, .. } => start,
        }
    }

    pub fn end(&self) -> Quat {
        match *self {
            Segment::Slerp { end, .. } | Segment::Chord { end, .. } => end,
        }
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Slerp { start, end, theta } => Segment::Slerp { start: end, end: start, theta },
            Segment::Chord { start, end } => Segment::Chord { start: end, end: start },
        }
    }

    pub fn sample_lift(&self, t: f64) -> UnitQuaternion {
        let t = t.clamp(0.0, 1.0);
        let (start, end, (c0, c1)) = match *self {
            Segment::Slerp { start, end, theta } if theta >= SMALL_ANGLE => {
                let s = theta.sin();
                (start, end, (((1.0 - t) * theta).sin() / s, (t * theta).sin() / s))
            }
            Segment::Slerp { start, end, .. } | Segment::Chord { start, end } => (start, end, (1.0 - t, t)),
        };
        UnitQuaternion::normalized(add(&scale(&start, c0), &scale(&end, c1)))
    }

    pub fn sample(&self, t: f64) -> Rotation {
        Rotation::from_unit(self.sample_lift(t))
    }
}

/// Parameter values `k / (n − 1)` for `k = 0..n`.
pub fn sample_parameters(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlannedPath {
    pub kind: PathKind,
    pub strategy: Strategy,
    pub rule: usize,
    /// The pair the caller asked to connect, in order.
    pub requested: [Rotation; 2],
    /// Where the path actually starts and ends.
    pub endpoints: [Rotation; 2],
    /// Whether `{endpoints}` equals `{requested}` as a set, within tolerance.
    pub endpoint_set_match: bool,
    pub segment: Segment,
}

impl PlannedPath {
    pub(crate) fn new(
        kind: PathKind,
        strategy: Strategy,
        rule: usize,
        requested: [Rotation; 2],
        segment: Segment,
        tol: f64,
    ) -> PlannedPath {
        let endpoints = [segment.sample(0.0), segment.sample(1.0)];
        let ordered = endpoints[0].distance(&requested[0]).max(endpoints[1].distance(&requested[1]));
        let swapped = endpoints[0].distance(&requested[1]).max(endpoints[1].distance(&requested[0]));
        PlannedPath {
            kind,
            strategy,
            rule,
            requested,
            endpoints,
            endpoint_set_match: ordered.min(swapped) < tol,
            segment,
        }
    }

    pub fn sample(&self, t: f64) -> Rotation {
        self.segment.sample(t)
    }

    pub fn samples(&self, n: usize) -> Vec<Rotation> {
        sample_parameters(n).into_iter().map(|t| self.sample(t)).collect()
    }

    /// Largest of `d(path(0), requested[0])` and `d(path(1), requested[1])`.
    pub fn endpoint_error(&self) -> f64 {
        self.endpoints[0]
            .distance(&self.requested[0])
            .max(self.endpoints[1].distance(&self.requested[1]))
    }

    pub fn export(&self, n: usize) -> PathExport {
        PathExport {
            rule: self.rule,
            strategy: self.strategy,
            kind: self.kind,
            endpoint_set_match: self.endpoint_set_match,
            requested: self.requested.map(|r| r.display_lift()),
            endpoints: self.endpoints.map(|r| r.display_lift()),
            samples: self.samples(n).iter().map(Rotation::display_lift).collect(),
        }
    }
}

/// Serializable view of a path at a fixed resolution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathExport {
    pub rule: usize,
    pub strategy: Strategy,
    pub kind: PathKind,
    pub endpoint_set_match: bool,
    pub requested: [Quat; 2],
    pub endpoints: [Quat; 2],
    pub samples: Vec<Quat>,
}

impl PathExport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,t,q0,q1,q2,q3\n");
        let ts = sample_parameters(self.samples.len());
        for (k, (t, q)) in ts.iter().zip(&self.samples).enumerate() {
            out.push_str(&format!("{k},{t},{},{},{},{}\n", q[0], q[1], q[2], q[3]));
        }
        out
    }
}
