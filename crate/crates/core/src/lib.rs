//! Exact computations with complete differential graded Lie algebras.

pub mod ce;
pub mod cosimplicial;
pub mod error;
pub mod lie;
pub mod quillen;
pub mod realization;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
