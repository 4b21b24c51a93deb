//! Rigorous accuracy bounds for normal and Poisson-type approximations
//! of sums of independent random variables, paired with an exact
//! lattice-distribution oracle that verifies every bound.

pub mod bounds_clt;
pub mod bounds_rs;
pub mod cf;
pub mod error;
pub mod lattice;
pub mod quad;
pub mod special;
pub mod tables;
pub mod tol;

pub use error::{Error, Result};
