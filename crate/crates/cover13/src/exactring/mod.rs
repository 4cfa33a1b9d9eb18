//! Exact coefficient fields and sparse weighted-graded polynomial arithmetic.

mod field;
pub mod interp;
mod linalg;
mod matrix;
mod parse;
mod poly;

pub use field::{FieldSpec, Scalar};
pub use linalg::Mat;
pub use matrix::{solve_combination, PolyMatrix};
pub use parse::parse_poly;
pub use poly::{Degree, Exps, MultiPoly, Ring, RingRef, VarSpec};
