//! Exact symbolic algebra for vector-valued integer polynomial systems
//! and the shift-and-double linearization engine.
//!
//! All types are immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

mod pet;
mod poly;
mod system;
mod weight;

pub mod json;

pub use pet::{
    pet_linearize, pet_linearize_with_rule, pet_step, pet_step_with_rule, LinearPart,
    LinearizationCertificate, PetStep, SelectionRule, StepKind, StepSummary, DEFAULT_STEP_CAP,
};
pub use poly::{IntPoly, Monomial, VecPoly};
pub use system::{
    concat_systems, is_nondegenerate, is_pairwise_separated, vecpoly_to_map, GpWitness, Node,
    NodeKind, PolyMap, ShiftPolySystem,
};
pub use weight::{weight_less, weight_matrix, weight_matrix_absolute, WeightMatrix};

/// Errors from the symbolic layer.
#[derive(Debug, Clone, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("unknown node id {0}")]
    UnknownNode(usize),
    #[error("duplicate node id {0}")]
    DuplicateNode(usize),
    #[error("duplicate parameter name")]
    DuplicateParameter,
    #[error("empty system")]
    EmptySystem,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight matrix shapes differ: {a:?} vs {b:?}")]
    ShapeMismatch { a: (usize, usize), b: (usize, usize) },
    #[error("no active nonlinear node")]
    NoNonlinearNode,
    #[error("system has no distinguished node")]
    MissingDistinguished,
    #[error("distinguished node {0} is inactive")]
    InactiveDistinguished(usize),
    #[error("node {0} has no function label")]
    MissingLabel(usize),
    #[error("general position violated: {0}")]
    GeneralPositionViolated(String),
    #[error("iteration cap {0} exceeded")]
    IterationCapExceeded(usize),
    #[error("active node {node} is not linear after the run: {detail}")]
    NonlinearResidual { node: usize, detail: String },
    #[error("direction polynomial of node {node} vanishes on coordinate {coord}")]
    VanishingProjection { node: usize, coord: usize },
    #[error("polynomial depends on the primary variable where none is allowed")]
    UnexpectedPrimaryVariable,
    #[error("evaluated value does not fit in the requested integer width")]
    ValueOverflow,
    #[error("json: {0}")]
    Json(String),
}
