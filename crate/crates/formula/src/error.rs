use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormulaError {
    #[error("parse error at token {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// 0^0, 0^negative, log of or to base 0 or 1, mod by 0 and similar.
    #[error("invalid formula: {0}")]
    Invalid(String),
    #[error("unbound variable x{0}")]
    Unbound(usize),
    #[error("rule {rule} does not match at {path:?}: {msg}")]
    NoMatch { rule: String, path: Vec<usize>, msg: String },
    #[error("bad path {0:?}")]
    BadPath(Vec<usize>),
    #[error("{0} not found in strata up to size {1}")]
    NotFound(String, usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, FormulaError>;
