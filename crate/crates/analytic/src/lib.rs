//! Coverage probability of downlink multi-tier HetNets with OSTBC transmit
//! diversity and multi-antenna receivers.
//!
//! Receivers: interference-blind MRC ([`coverage_ib_mrc`]), interference-aware
//! MRC for two antennas ([`coverage_ia_mrc`] and its no-/full-correlation
//! variants) and selection combining ([`coverage_sc`]). The `*_simplified`
//! functions are the noise-free, equal-exponent special cases, which do not
//! depend on densities or powers.
//!
//! All derivatives at s = 1 are taken as Taylor coefficients in σ = 1 − s.
//! The exponents involved have positive coefficients past order zero, so
//! every coefficient of their exponential is positive and the order sums do
//! not cancel.

mod common;
mod curve;
mod error;
mod gain;
mod ia;
mod ib;
mod sc;

pub use curve::{
    coverage, db_grid, default_grid, evaluate_curve, CoverageCurve, CoverageQuery, Method, Scheme,
};
pub use error::{AnalyticError, Result};
pub use gain::{coverage_siso_simplified, gain_ia, gain_ia_explicit, gain_ib};
pub use ia::{
    coverage_ia_mrc, coverage_ia_mrc_chebyshev, coverage_ia_mrc_tiered, coverage_ia_nocorr,
    coverage_ia_nocorr_tiered, coverage_ia_simplified, outage_ia_mrc,
};
pub use ib::{
    coverage_ia_fullcorr, coverage_ib_mrc, coverage_ib_mrc_simplified, coverage_ib_mrc_tiered, outage_ib_mrc,
};
pub use sc::{coverage_sc, coverage_sc_simplified, coverage_sc_tiered};

/// A coverage value with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEstimate {
    pub value: f64,
    pub abs_error: f64,
    /// Largest single term of the order/tier sum.
    pub largest_term: f64,
}
