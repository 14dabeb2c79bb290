//! Exact computations around A-infinity moduli of pointed curves.
//!
//! Everything is over the rationals; there is no floating point anywhere.

pub mod ainfinity;
pub mod curves;
pub mod error;
pub mod genus_one;
pub mod hochschild;
pub mod linalg;
pub mod poly;
pub mod quiver;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, ExactVector, Rat, Subspace};
