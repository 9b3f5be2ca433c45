use construct_core::CoreError;
use construct_formula::FormulaError;
use construct_solvers::SolveError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit code 2.
    #[error("{0}")]
    Usage(String),
    /// The computation itself failed: exit code 1.
    #[error("{message}")]
    Domain { message: String, detail: Value },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain { message: msg.into(), detail: Value::Null }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "error": "usage", "message": m }),
            CliError::Domain { message, detail } => {
                let mut v = json!({ "error": "domain", "message": message });
                if !detail.is_null() {
                    v["detail"] = detail.clone();
                }
                v
            }
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Json(_) | CoreError::Parse { .. } | CoreError::BadShape { .. } | CoreError::EntryCount { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let detail = match &e {
            SolveError::Inconsistent { row, residue } => json!({ "kind": "inconsistent", "witness_row": row, "residue": residue }),
            SolveError::Branching { row, n } => json!({ "kind": "branching", "row": row, "unknowns": n }),
            SolveError::Unbounded { row } => json!({ "kind": "unbounded", "row": row }),
            SolveError::Divergence { iterations, last_step, growth } => {
                json!({ "kind": "divergence", "iterations": iterations, "last_step": last_step, "growth": growth })
            }
            SolveError::Residual { residual, tol } => json!({ "kind": "residual", "residual": residual, "tol": tol }),
            SolveError::Singular(_) => json!({ "kind": "singular" }),
            SolveError::Core(c) => return c.clone().into(),
            SolveError::Shape(_) => return CliError::Usage(e.to_string()),
            _ => Value::Null,
        };
        CliError::Domain { message: e.to_string(), detail }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
