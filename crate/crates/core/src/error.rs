use thiserror::Error;

use crate::rational::Point;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("polytope is unbounded along direction {:?}", .direction.to_strings())]
    UnboundedPolytope { direction: Point },
    #[error("polytope is not full-dimensional (zero volume)")]
    DegeneratePolytope,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("halfspace normal must be nonzero")]
    ZeroNormal,
    #[error("ray {index} {ray:?} is not a primitive nonzero lattice vector")]
    NonPrimitiveRay { index: usize, ray: Vec<i64> },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} is malformed: {reason}")]
    MalformedCone { cone: usize, reason: String },
    #[error("cone {cone} is not simplicial of full dimension")]
    NotSimplicial { cone: usize },
    #[error("cone {cone} is not smooth (|det| = {det})")]
    NotSmooth { cone: usize, det: i128 },
    #[error("fan is not complete: wall {wall:?} is shared by {cones} maximal cone(s)")]
    NotComplete { wall: Vec<usize>, cones: usize },
    #[error("fan is not complete: cone adjacency graph is disconnected")]
    Disconnected,
    #[error("cones {first} and {second} overlap")]
    OverlappingCones { first: usize, second: usize },
    #[error("divisor is not ample")]
    NotAmple,
    #[error("divisor is not nef")]
    NotNef,
    #[error("divisor is not big")]
    NotBig,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("t = {t} is not below the pseudo-effective threshold {tau}")]
    ThresholdExceeded { t: String, tau: String },
    #[error("normalized score {score} exceeds the bound {bound}")]
    BoundViolated { score: String, bound: String },
    #[error("divisors live on different varieties")]
    VarietyMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
