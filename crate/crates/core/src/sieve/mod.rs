//! Primes, the small-prime residue trick, the divisor-sum majorant and
//! its correlation diagnostics.

mod chi;
mod context;
mod forms;
mod nu;
mod primes;

pub use chi::{chi, chi_deriv, ChiKind, COSINE_SCALE};
pub use context::{
    choose_residue_points, choose_residue_product, default_w, make_context, SieveContext,
};
pub use forms::{polynomial_forms_check, FormsOptions, FormsStatistic};
pub use nu::{build_f_a, correlation_average, exp_fn, exp_sum_bound, nu_axis, NuTable};
pub use primes::PrimeTable;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SieveError {
    #[error("sieve limit {0} is too small")]
    LimitTooSmall(u64),
    #[error("epsilon {0} outside (0, 1)")]
    InvalidEpsilon(f64),
    #[error("divisor truncation R = {0} below 2; raise epsilon or the range")]
    TruncationTooSmall(u64),
    #[error("residue {b} shares a factor with W = {w}")]
    BadResidue { b: u64, w: u64 },
    #[error("no residue class chosen yet")]
    ResidueNotChosen,
    #[error("no residue class intersects the target set")]
    EmptyIntersection,
    #[error("value {value} exceeds the prime table limit {limit}")]
    FactorizationRangeExceeded { value: u64, limit: u64 },
    #[error("shifts [{min}, {max}] leave no room in a range of {n}")]
    ShiftOutOfRange { min: i64, max: i64, n: u64 },
    #[error("degenerate map family: {0}")]
    DegenerateSystem(String),
    #[error("cache format: {0}")]
    CacheFormat(String),
    #[error("io: {0}")]
    Io(String),
}
