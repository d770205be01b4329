//! Fixed points, multipliers and stability regions of the rational maps
//! `R(z) = z^n + a / z^n + c`.

pub mod atlas;
pub mod error;
pub mod kernel;
pub mod map;
pub mod oracle;
pub mod relations;
pub mod solvers;

pub use error::{Error, Regime, Result};
pub use num_complex::Complex64;
