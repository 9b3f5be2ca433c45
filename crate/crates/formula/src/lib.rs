//! Formula complexity: arithmetic formulas over {−1, 1} stratified by minimal size,
//! and boolean formulas numbered by the functions they compute.

pub mod arith;
pub mod boolean;
pub mod cvalue;
pub mod error;
pub mod rewrite;
pub mod strata;

pub use arith::{ArithFormula, Gate};
pub use boolean::{enumerate_bool, BoolEnumeration, BoolFormula, LexNumber};
pub use cvalue::{parse_cvalue, CValue};
pub use error::{FormulaError, Result};
pub use rewrite::{apply_rewrite, RuleId};
pub use strata::{
    cardinality_bounds, complexity, enumerate_strata, enumerate_strata_with, tower_bound_check, tower_formula,
    tower_sequence, EnumOptions, Stratification,
};
