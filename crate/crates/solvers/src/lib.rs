//! Solvers for systems written as constructs: linear (over fields and skew
//! fields), log-linear, base-exponent, Sylvester and mixed systems, plus
//! interpolation and the power-sum root iteration.

pub mod algebraic;
pub mod construct;
pub mod error;
pub mod exponent;
pub mod interp;
pub mod linear;
pub mod lsq;
pub mod mixed;
pub mod ring;
pub mod roots;
pub mod sylvester;

pub use algebraic::{compose_algebraic, AlgebraicSystem};
pub use construct::{degree_matrix, is_ref, is_rref, DegreeMatrix};
pub use error::{Result, SolveError};
pub use exponent::{solve_type2, solve_type3, LogSolution, Type2System, Type3System};
pub use linear::{solve_type1, solve_type1_skew, Elimination, MulSide, Solution, Type1System};
pub use lsq::{least_squares, least_squares_type1};
pub use mixed::{mixed_fixed_point, MixedSystem};
pub use ring::DivisionRing;
pub use roots::{iterate_roots, power_sums};
pub use sylvester::solve_sylvester;
