//! Averages, local box norms, dual functions and the constructive
//! bounded-model decomposition on dense grids over `(Z/NZ)^d`.

mod decompose;
mod dual;
mod function;
mod norms;
mod vdc;
mod von_neumann;

pub use decompose::{dense_decompose, DecomposeOptions, DecompositionResult};
pub use dual::{dual_function, orthogonality_check, CubeFamily};
pub use function::GridFunction;
pub use norms::{
    avg_box_norm, box_norm, gowers_inner, lambda_average, AvgBoxSpec, AvgNorm, BoxSpec,
    EvalOptions,
};
pub use vdc::{vdc_check, VdcBounds};
pub use von_neumann::{von_neumann_probe, ProbeReport, ProbeTerm};

pub(crate) use function::unflatten as unflatten_index;

#[derive(Debug, Clone, thiserror::Error)]
pub enum GridError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("family incomplete: expected {expected} members, got {got}")]
    IncompleteFamily { expected: usize, got: usize },
    #[error("exhaustive evaluation needs {need} term evaluations, budget is {budget}")]
    BudgetExceeded { need: u128, budget: u128 },
    #[error("sequence too short: need {need}, got {got}")]
    RangeTooShort { need: usize, got: usize },
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("function escapes [0, nu] at {points} points")]
    MajorantViolated { points: usize },
    #[error("inequality violated: {0}")]
    InequalityViolated(String),
    #[error("io: {0}")]
    Io(String),
}
