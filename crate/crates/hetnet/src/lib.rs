//! Network model for downlink coverage analysis.
//!
//! Units are SI throughout: BS/m², watts, meters. Helpers in [`units`]
//! convert the usual BS/km² and dBm figures at the configuration boundary.

mod code;
mod config;
mod context;
pub mod presets;
mod stats;
pub mod units;

pub use code::{CodeEntry, OstbcCode};
pub use config::{NetworkConfig, TierConfig};
pub use context::{PathLossCoupling, ServingContext};
pub use stats::{
    association_probabilities, association_probability, interference_correlation,
    interference_covariance_conditional, interference_variance, interference_variance_conditional,
    rate_adjusted_threshold, serving_distance_pdf,
};

use hetdiv_core::NumError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HetNetError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Numerical(#[from] NumError),
}

pub type Result<T> = std::result::Result<T, HetNetError>;
