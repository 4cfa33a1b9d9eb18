//! Graded coordinate rings of (1,3)-polarised abelian surfaces with canonical
//! level structure, built from explicit cover-homomorphism data, with exact
//! verification of their structural properties.

pub mod abelian13;
pub mod ambient;
pub mod coverhom;
pub mod error;
pub mod exactring;
pub mod heisenberg;
pub mod koszul;
pub mod moduli;

pub use error::{Error, Result};
