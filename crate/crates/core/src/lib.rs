//! Exact modular data: cyclotomic arithmetic, modular categories at the level
//! of (S, T), their Galois actions, SL2(Z) lifts, transitive classification
//! and super-modular reductions.

pub mod classification;
pub mod error;
pub mod galois;
pub mod modular_data;
pub mod numeric;
pub mod report;
pub mod sl2z;
pub mod supermod;

pub use error::{Error, Result};
pub use modular_data::{FusionRing, ModularData};
pub use numeric::{CyclotomicNumber, Matrix};
pub use report::{Check, Report};
