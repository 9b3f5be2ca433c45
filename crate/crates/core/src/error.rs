use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid shape {dims:?}: every extent must be at least 1")]
    BadShape { dims: Vec<usize> },
    #[error("entry count {got} does not match shape {dims:?} (expected {expected})")]
    EntryCount { dims: Vec<usize>, expected: usize, got: usize },
    #[error("not conformable: {0}")]
    Conformability(String),
    #[error("composer arity {arity} cannot take {operands} operands")]
    Arity { arity: usize, operands: usize },
    #[error("instance {kind} is not defined over {domain}")]
    UnsupportedKind { kind: String, domain: &'static str },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at token {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("evaluation hit a branch cut at z = {0}")]
    BranchCut(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
