//! Twisted (h,q)-Bernoulli numbers and polynomials, the zeta/L-functions that
//! interpolate them on the complex side, and the twisted p-adic
//! (h,q)-L-function, with exact and finite-precision arithmetic kernels.

pub mod error;
pub mod exact;
pub mod ring;

pub use error::{Error, Result};
