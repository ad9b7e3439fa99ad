//! Exact tropical theta functions on tropical tori.
//!
//! Everything is computed over arbitrary-precision rationals: tropical
//! arithmetic, integral lattice algebra, rational polyhedra, theta generators
//! and their section polyhedra, divisors and intersection numbers.

pub mod divisor;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod num;
pub mod oracle;
pub mod polyhedra;
pub mod serde_rat;
pub mod theta;
pub mod tropical;

pub use error::{Error, Result};
pub use num::{Int, Rat};
pub use tropical::{trop_add, trop_det, trop_mul, Tropical, TropicalMatrix};
