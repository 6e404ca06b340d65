//! Operads: multilinear bases of As, Lie and P_n, the Rees model of BD_1,
//! BD_0 and Hopf checks in arity 3, Arnold algebras and Weyl structure maps.

pub mod arnold;
pub mod freeop;
pub mod multilinear;
pub mod rees;
pub mod weyl;

pub use arnold::{arnold_algebra, ArnoldAlgebra, ArnoldPiece};
pub use freeop::{bd0_check, hopf_coproduct_check, OperadCheck};
pub use multilinear::{multilinear_basis, MultilinearElement, MultilinearSpace, OperadKind, MAX_ARITY};
pub use rees::{check_rees, rees_bd1, ReesCheck, ReesOperad};
pub use weyl::{weyl_structure_map, WeylImage};
