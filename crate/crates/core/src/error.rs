use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ambient dimensions differ: P^{left} vs P^{right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("projective space dimension must be at least 1, got {0}")]
    InvalidAmbient(usize),
    #[error("relation index {i} out of range 0..={max}")]
    RelationIndexOutOfRange { i: usize, max: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("degree {degree} was not computed (cap {cap})")]
    DegreeNotComputed { degree: usize, cap: usize },
    #[error("element has a diagonal part; only symmetric off-diagonal elements are supported here")]
    NotSymmetricPart,
    #[error("kernel of j* in degree {degree} has dimension {found}, expected {expected}")]
    KernelDimension { degree: usize, found: usize, expected: usize },
    #[error("no element of the Borel ring maps to the given preimage in degree {degree}")]
    NoPreimage { degree: usize },
    #[error("Sq^1 does not preserve ker j* in degree {degree}")]
    Sq1NotWellDefined { degree: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlannerError {
    #[error("the two states coincide (rotation distance {distance:e})")]
    CoincidentStates { distance: f64 },
    #[error("rule {rule} does not apply to this pair")]
    RuleNotApplicable { rule: usize },
    #[error("rule index {0} out of range")]
    RuleOutOfRange(usize),
    #[error("invalid quaternion: {0}")]
    InvalidQuaternion(String),
    #[error("embedding is degenerate for this pair")]
    DegenerateEmbedding,
}
