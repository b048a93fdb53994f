//! Exact computations on central hyperplane arrangements over ℚ: intersection
//! lattices, characteristic polynomials, graded pieces of logarithmic
//! derivation modules with multiplicities, and checkable freeness
//! certificates.

pub mod arrangement;
pub mod certificate;
pub mod criteria;
pub mod error;
pub mod io;
pub mod logder;
pub mod polyalg;
pub mod verify;

pub use error::{Error, Result};
