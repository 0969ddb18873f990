//! Special functions around `h(t) = e^{1/t} - ψ'(t)` and a harness that checks
//! its complete monotonicity, the Bessel-kernel inequality behind it, the
//! Laplace representations of the exponential tails `H_k`, and the limit
//! `h(t) -> 1`.
//!
//! All values are carried as [`Real`], a double-double with about 106 bits
//! of mantissa.

pub mod error;
pub mod polygamma;
pub mod quadrature;
pub mod real;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use real::Real;
