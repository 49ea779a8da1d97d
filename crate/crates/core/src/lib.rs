//! Exact computer-algebra toolkit for certifying curve, lattice and line
//! bundle computations on the classical Godeaux surface, the quotient of the
//! Fermat quintic by Z/5.

pub mod cache;
pub mod checks;
pub mod curves;
pub mod cyclotomic;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod sequence;
pub mod tables;
pub mod vanishing;

pub use cyclotomic::{CycNum, Z5};
pub use error::{Error, Result};
