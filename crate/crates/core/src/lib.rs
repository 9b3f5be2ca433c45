//! Constructs: hypermatrices whose product is parameterized by a combinator
//! and a composer, with the usual matrix product as the (Σ, ×) instance.

pub mod algebra;
pub mod error;
pub mod funcexpr;
pub mod hypermatrix;
pub mod json;
pub mod poly;
pub mod product;

pub use error::{CoreError, Result};
pub use hypermatrix::{Hypermatrix, Shape};
pub use product::{cprod2, cprod3, cprod_general, validate_conformable, AlgebraSpec};
