//! Exact computations with shifted Poisson and symplectic structures on
//! affine derived schemes, presented by free graded-commutative algebras.

pub mod compare;
pub mod error;
pub mod fixtures;
pub mod exactlin;
pub mod freecdga;
pub mod gradedmixed;
pub mod lieinfty;
pub mod operads;
pub mod polyvec;
pub mod report;

pub use error::{Error, Result};
