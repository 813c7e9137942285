//! Generalized Weyl algebras, diskew polynomial rings and their simplicity criteria.
#![no_std]

extern crate alloc;

pub mod dpr;
pub mod endo;
pub mod error;
pub mod field;
pub mod gwa;
pub mod linsolve;
pub mod padic;
pub mod poly;
pub mod rankn;
pub mod report;
pub mod ring;
pub mod sample;
pub mod simplicity;
pub mod tri;
pub mod univariate;

pub use dpr::{Dpr, DprData, GwaImage};
pub use endo::RingEndo;
pub use error::{AlgebraError, Result};
pub use field::{Field, FieldElem};
pub use gwa::{Gwa, GwaData, Involution};
pub use report::{Check, Status, ValidationReport};
pub use ring::{Ring, RingElem};
pub use tri::Tri;
