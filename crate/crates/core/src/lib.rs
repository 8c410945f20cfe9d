//! Exact arithmetic for differential operators on cusp algebras.

pub mod error;
pub mod exactpoly;
pub mod gwa;
pub mod modactions;
pub mod classify;
pub mod cli;
pub mod cuspops;
pub mod skewlaurent;

pub use error::{Error, Result};
pub use exactpoly::{BasePoly, Rational};
pub use skewlaurent::{Degree, LaurentOp};
