use construct_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent system: row {row} reduces to 0 = {residue}")]
    Inconsistent { row: usize, residue: String },
    #[error("singular: {0}")]
    Singular(String),
    #[error(
        "right side b[{row}] = 0: the constraint only makes sense if one of the factors of the row vanishes, \
         and choosing which of the 2^{n} factors to set to zero branches combinatorially"
    )]
    Branching { row: usize, n: usize },
    #[error("right side b[{row}] = 0 admits no bounded solution (a^x never vanishes)")]
    Unbounded { row: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("substitution residual {residual:e} exceeds tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },
    #[error("no convergence after {iterations} iterations: last step {last_step:e}, growth ratio {growth:.3}")]
    Divergence { iterations: usize, last_step: f64, growth: f64 },
    #[error("entry ({row},{col}) has no z-degree: {expr}")]
    Degree { row: usize, col: usize, expr: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, SolveError>;
