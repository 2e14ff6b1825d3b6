//! Monte Carlo simulation of the typical downlink user in a multi-tier
//! network.
//!
//! Each iteration drops a Poisson number of base stations per tier in a disc
//! around the user, associates with the strongest long-term received power,
//! draws Rayleigh MIMO channels and evaluates the post-combiner SINR of every
//! requested receiver. Combining works on the real-valued equivalent of the
//! codeword matrices, so interferers with other code lengths or slot offsets
//! are handled exactly.
//!
//! Iteration `i` draws from its own ChaCha stream `(seed, i)`, which makes a
//! run independent of the number of worker threads.

mod combine;
mod config;
mod field;
mod geometry;
mod moments;
mod run;
mod stats;

pub use combine::{combine_ia, combine_ib, combine_sc, IaMode};
pub use config::{InterferenceEstimate, SimConfig, SimScheme};
pub use field::{sample_conditional_field, sample_interference, Interferer, InterferenceField};
pub use geometry::{sample_geometry, Geometry};
pub use moments::{interference_moments, MomentReport};
pub use run::{iteration_rng, run, write_samples_csv, IterationSample, SimCurve, SimPoint, SimResult};
pub use stats::{wilson_interval, wilson_se};

use hetdiv_hetnet::HetNetError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    Config(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Model(#[from] HetNetError),
    #[error("writing samples: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, SimError>;
