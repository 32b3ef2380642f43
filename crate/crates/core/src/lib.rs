//! Exact computer algebra for Danielewski surfaces `x^h z - Q(x, y) = 0`.

pub mod algebra;
pub mod autos;
pub mod cli;
pub mod error;
pub mod json;
pub mod random;
pub mod standardize;
pub mod surfaces;
pub mod trees;

pub use error::{Error, Result};
