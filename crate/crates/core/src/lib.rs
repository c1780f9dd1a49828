//! Exact Hilbert-Kunz data for the quadrics `R = k[x_0..x_{n+1}]/(x_0^2 + .. + x_{n+1}^2)`.
//!
//! - [`arith`]: rationals, binomials, dimension counters, piecewise polynomials.
//! - [`frobenius`]: splitting of Frobenius pushforwards and graded colengths.
//! - [`density`]: HK density functions, multiplicities and F-thresholds.
//! - [`oracle`]: brute-force colengths over `F_p`, independent of everything above.

pub mod arith;
pub mod density;
pub mod error;
pub mod frobenius;
pub mod oracle;

pub use error::{HkqError, Result};
