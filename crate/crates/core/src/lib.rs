//! Exact commutative-algebra kernels for normalization-based polynomial identity testing.

pub mod coeff;
pub mod curve;
pub mod error;
pub mod groebner;
pub mod json;
pub mod limits;
pub mod linalg;
pub mod mpoly;
pub mod pit;
pub mod zerodim;

pub use coeff::{Field, Scalar};
pub use error::{Error, Result};
pub use mpoly::{MPoly, MonomialOrder, PolyRing, Ring};
