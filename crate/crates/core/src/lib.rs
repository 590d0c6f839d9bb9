//! Planar equilateral pentagon central configurations: geometry, equations,
//! the symmetric family, interval certification and tropical checks.

pub mod analysis;
pub mod certify;
pub mod equations;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod scalar;
pub mod tropical;

pub use error::{Error, Result};
pub use interval::Interval;
pub use scalar::{Dual, Scalar};
