//! Ready-made network configurations.

use crate::units::{dbm_to_watts, per_km2_to_per_m2};
use crate::{NetworkConfig, OstbcCode, TierConfig};

/// Densities (BS/km²), powers (dBm) and path-loss exponents of the
/// three-tier reference scenario: macro, pico, femto.
pub const REFERENCE_TIERS: [(f64, f64, f64); 3] = [(4.0, 46.0, 3.76), (16.0, 30.0, 3.67), (40.0, 24.0, 3.5)];

/// Noise power of the reference scenario in dBm.
pub const REFERENCE_NOISE_DBM: f64 = -104.0;

fn tier(density_km2: f64, power_dbm: f64, alpha: f64, code: OstbcCode) -> TierConfig {
    TierConfig::new(per_km2_to_per_m2(density_km2), dbm_to_watts(power_dbm), alpha, code)
        .expect("preset tiers are valid")
}

/// Reference three-tier network: 4x4 rate-3/4 macro, Alamouti pico and
/// single-antenna femto cells. `noise_dbm = None` is interference-limited.
pub fn table2(rx_antennas: u32, noise_dbm: Option<f64>) -> NetworkConfig {
    let codes = [OstbcCode::ostbc4_three_quarter(), OstbcCode::alamouti(), OstbcCode::siso()];
    let tiers = REFERENCE_TIERS
        .iter()
        .zip(codes)
        .map(|(&(d, p, a), c)| tier(d, p, a, c))
        .collect();
    let noise = noise_dbm.map_or(0.0, dbm_to_watts);
    NetworkConfig::new(tiers, rx_antennas, noise).expect("preset network is valid")
}

/// Reference densities and powers with a common path-loss exponent and
/// code; interference-limited.
pub fn equal_alpha(alpha: f64, code: OstbcCode, rx_antennas: u32) -> NetworkConfig {
    let tiers = REFERENCE_TIERS
        .iter()
        .map(|&(d, p, _)| tier(d, p, alpha, code.clone()))
        .collect();
    NetworkConfig::new(tiers, rx_antennas, 0.0).expect("preset network is valid")
}

/// A single tier with density 10 BS/km² and 1 W; interference-limited.
pub fn single_tier(alpha: f64, code: OstbcCode, rx_antennas: u32) -> NetworkConfig {
    NetworkConfig::new(vec![tier(10.0, 30.0, alpha, code)], rx_antennas, 0.0).expect("preset network is valid")
}
