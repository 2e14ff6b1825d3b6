use crate::{Result, SimError};
use hetdiv_hetnet::NetworkConfig;
use std::fmt;
use std::str::FromStr;

/// Receiver evaluated by the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimScheme {
    /// Interference-blind MRC (plain OSTBC decoding over all antennas).
    IbMrc,
    /// Interference-aware MRC, exact post-combiner SINR including the
    /// cross-antenna phase terms.
    IaMrcExact,
    /// Interference-aware MRC with the phase terms dropped.
    IaMrcSimplified,
    /// Selection combining; single-antenna transmitters only.
    Sc,
    /// Interference-aware MRC where every receive antenna sees an
    /// independent interferer field.
    IaNc,
    /// Interference-aware MRC where every receive antenna sees the
    /// interference of the first one.
    IaFc,
}

impl SimScheme {
    pub const ALL: [SimScheme; 6] = [
        SimScheme::IbMrc,
        SimScheme::IaMrcExact,
        SimScheme::IaMrcSimplified,
        SimScheme::Sc,
        SimScheme::IaNc,
        SimScheme::IaFc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimScheme::IbMrc => "IB_MRC",
            SimScheme::IaMrcExact => "IA_MRC_EXACT",
            SimScheme::IaMrcSimplified => "IA_MRC_SIMPLIFIED",
            SimScheme::Sc => "SC",
            SimScheme::IaNc => "IA_NC",
            SimScheme::IaFc => "IA_FC",
        }
    }
}

impl fmt::Display for SimScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimScheme {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        let key = if key == "IA_MRC" { "IA_MRC_EXACT".to_string() } else { key };
        SimScheme::ALL.into_iter().find(|x| x.name() == key).ok_or_else(|| {
            SimError::Config(format!(
                "unknown simulated scheme '{s}' (expected IB_MRC, IA_MRC_EXACT, IA_MRC_SIMPLIFIED, SC, IA_NC or IA_FC)"
            ))
        })
    }
}

/// How the interference-aware receivers learn `I_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterferenceEstimate {
    /// The exact per-antenna interference power.
    Genie,
    /// Mean squared envelope of the interference over the frame's
    /// resources, each carrying fresh symbols.
    Averaged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub net: NetworkConfig,
    pub iterations: u64,
    /// Mean number of base stations dropped per tier; the disc radius of
    /// tier k is `sqrt(mean / (λ_k π))`.
    pub mean_bs_per_tier: u32,
    pub resources_per_frame: u32,
    pub rng_seed: u64,
    pub combining: Vec<SimScheme>,
    /// Linear SINR thresholds.
    pub thresholds: Vec<f64>,
    /// Raise the threshold of a user served by tier ℓ to `(1+T)^{1/r_ℓ} − 1`.
    pub apply_rate_loss: bool,
    pub estimation: InterferenceEstimate,
    /// Keep every iteration's sample in the result (for CSV dumps).
    pub keep_samples: bool,
}

impl SimConfig {
    /// 2000 iterations, 100 BSs per tier, 80 resources, seed 1, genie estimation.
    pub fn new(net: NetworkConfig, thresholds: Vec<f64>, combining: Vec<SimScheme>) -> Self {
        Self {
            net,
            iterations: 2000,
            mean_bs_per_tier: 100,
            resources_per_frame: 80,
            rng_seed: 1,
            combining,
            thresholds,
            apply_rate_loss: false,
            estimation: InterferenceEstimate::Genie,
            keep_samples: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(SimError::Config("iterations must be at least 1".into()));
        }
        if self.mean_bs_per_tier == 0 {
            return Err(SimError::Config("mean_bs_per_tier must be at least 1".into()));
        }
        if self.resources_per_frame == 0 {
            return Err(SimError::Config("resources_per_frame must be at least 1".into()));
        }
        if self.combining.is_empty() {
            return Err(SimError::Config("no combining scheme selected".into()));
        }
        if let Some(t) = self.thresholds.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(SimError::Config(format!("threshold {t} is not positive and finite")));
        }
        if self.thresholds.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SimError::Config("thresholds must be strictly ascending".into()));
        }
        if self.combining.contains(&SimScheme::Sc) && self.net.tiers().iter().any(|t| t.m_tx() != 1) {
            return Err(SimError::Unsupported("SC needs single-antenna transmitters in every tier".into()));
        }
        Ok(())
    }

    /// Disc radius of tier `k`.
    pub fn disc_radius(&self, k: usize) -> f64 {
        disc_radius(self.mean_bs_per_tier, self.net.tier(k).density)
    }
}

pub(crate) fn disc_radius(mean_bs: u32, density: f64) -> f64 {
    (mean_bs as f64 / (density * std::f64::consts::PI)).sqrt()
}
