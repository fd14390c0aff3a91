use thiserror::Error;

use crate::vector::Vector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one entry")]
    EmptyVector,

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("weight vector must be strictly positive (entry {index} is {value})")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("cone violates the opening-angle assumption (angle {angle} >= pi/2)")]
    OpeningAngle { angle: f64 },

    #[error("order body is unbounded for this cone")]
    UnboundedBody,

    #[error("point is not in the interior of the cone: {0:?}")]
    NotInterior(Vector),

    #[error("activation `{name}` is undefined at {value} (domain is the nonnegative reals)")]
    DomainViolation { name: &'static str, value: f64 },

    #[error("map is only defined on the nonnegative orthant, got {0:?}")]
    NegativeInput(Vector),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown activation `{0}`")]
    UnknownActivation(String),

    #[error("unknown builtin map `{0}`")]
    UnknownBuiltin(String),

    #[error("malformed document: {0}")]
    Schema(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("contraction relation is unsatisfiable at x = {x:?} (no c up to {bound} works)")]
    UnsatisfiableContraction { x: Vector, bound: f64 },

    #[error("iteration left the order cone at step {step}: x[{next_step}] is not below x[{step}]")]
    OrderViolation {
        step: usize,
        next_step: usize,
        previous: Vector,
        next: Vector,
    },

    #[error("contraction violated at step {step}: residual ratio {ratio} exceeds rate {rate}")]
    ContractionViolation { step: usize, ratio: f64, rate: f64 },

    #[error("certified rate c*delta(K) = {0} is not below 1")]
    RateTooLarge(f64),

    #[error("starting point is not feasible: f(p) is not below p")]
    NotFeasible,

    #[error("no convergence within {0} iterations")]
    MaxIterations(usize),

    #[error("theorem `{theorem}` requires point `{name}`")]
    MissingPoint { theorem: &'static str, name: &'static str },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
