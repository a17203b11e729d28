//! Exact-arithmetic audit of the Aschbacher-class elimination for the image
//! of the H4 Artin group in its 48-dimensional Hecke representation.

pub mod arith;
pub mod audit;
pub mod decimal;
pub mod error;
pub mod field;
pub mod groups;
pub mod oracle;
pub mod params;
pub mod selftest;

pub use error::{Error, Result};
