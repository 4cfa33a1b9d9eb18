//! Reference computations kept deliberately separate from `cover13`.
//!
//! Nothing here depends on the main library: arithmetic, polynomials and
//! linear algebra are re-done in the plainest possible way so that agreement
//! between the two is evidence rather than a tautology.

pub mod field;
pub mod groebner;
pub mod interp;
pub mod linalg;
pub mod orbit;
pub mod printed;

pub use field::{ModP, OField};
pub use groebner::{Buchberger, OPoly};
