//! Separating hash family toolkit: brute-force verification, Johnson-type
//! bounds, matrix reductions, sum-free sets, hypergraph certificates, and
//! explicit PHF constructions.

pub mod bounds;
pub mod construct;
pub mod error;
pub mod hypergraph;
pub mod matrix;
pub mod reduce;
pub mod sumfree;
pub mod verify;
pub mod violation;

pub use error::{Error, ParseError};
pub use matrix::{separates, CodeMatrix, SepType};
pub use violation::{RainbowCycle, Violation};
