//! Exact dimension reduction for integrals of `f(x₁+…+xₙ)` over the unit
//! cube, the closed form of the log-gamma case, and numeric oracles that
//! check both.
//!
//! ```
//! use cubeslice::{exact::Poly, reduction::reduction_plan};
//!
//! let plan = reduction_plan(3).unwrap();
//! assert_eq!(plan.weights()[1].weight, Poly::from_ints(&[1, 2, -2]));
//! ```

pub mod cli;
pub mod error;
pub mod exact;
pub mod loggamma;
pub mod quadrature;
pub mod reduction;
pub mod verify;

pub use error::{Error, Result};
