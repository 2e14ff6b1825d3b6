//! Numerical kernel shared by the analytic and simulation crates.
//!
//! - [`specfun`]: Gauss hypergeometric function on the negative real axis,
//!   Erlang helpers and the two-branch interference integral Ψ.
//! - [`quad`]: adaptive Gauss–Kronrod (10/21) for scalar and vector integrands.
//! - [`cheb`]: Chebyshev interpolation derivatives at s = 1.
//! - [`series`]: truncated power series (exponential, reciprocal, products).
//! - [`sum`]: compensated summation.

pub mod cheb;
pub mod quad;
pub mod series;
pub mod specfun;
pub mod sum;

mod error;

pub use error::NumError;
