//! Scenario files: TOML with one `[[tier]]` table per tier, an optional
//! `[grid]` and an optional `[sim]` block. Unknown keys are errors.

use crate::{CliError, Result};
use hetdiv_hetnet::units::{db_to_linear, dbm_to_watts, per_km2_to_per_m2};
use hetdiv_hetnet::{NetworkConfig, OstbcCode, TierConfig};
use hetdiv_montecarlo::{InterferenceEstimate, SimConfig, SimScheme};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

const TABLE2: &str = include_str!("../scenarios/table2.scenario");
const EQUAL_ALPHA: &str = include_str!("../scenarios/equal_alpha.scenario");

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TierSpec {
    pub density_per_km2: f64,
    pub power_dbm: f64,
    pub path_loss_exp: f64,
    pub code: String,
}

/// `noise_dbm = -104.0` or `noise_dbm = "none"`.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum NoiseSpec {
    Dbm(f64),
    Keyword(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start_db: f64,
    pub stop_db: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            start_db: -10.0,
            stop_db: 20.0,
            count: 31,
        }
    }
}

impl GridSpec {
    /// Parses `START:STOP:COUNT`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || CliError::Config(format!("--grid expects START:STOP:COUNT, got '{s}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            start_db: parts[0].trim().parse().map_err(|_| bad())?,
            stop_db: parts[1].trim().parse().map_err(|_| bad())?,
            count: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }

    pub fn thresholds_db(&self) -> Vec<f64> {
        match self.count {
            1 => vec![self.start_db],
            n => (0..n)
                .map(|i| self.start_db + (self.stop_db - self.start_db) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(CliError::Config("grid.count must be at least 1".into()));
        }
        if !(self.start_db.is_finite() && self.stop_db.is_finite()) {
            return Err(CliError::Config("grid bounds must be finite".into()));
        }
        if self.count > 1 && self.stop_db <= self.start_db {
            return Err(CliError::Config("grid.stop_db must exceed grid.start_db".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimSpec {
    pub iterations: u64,
    pub seed: u64,
    pub mean_bs_per_tier: u32,
    pub resources_per_frame: u32,
    /// `"genie"` or `"averaged"`.
    pub estimation: String,
}

impl Default for SimSpec {
    fn default() -> Self {
        Self {
            iterations: 2000,
            seed: 1,
            mean_bs_per_tier: 100,
            resources_per_frame: 80,
            estimation: "genie".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub rx_antennas: u32,
    pub noise_dbm: NoiseSpec,
    #[serde(default = "default_schemes")]
    pub schemes: Vec<String>,
    #[serde(default)]
    pub rate_loss: bool,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(rename = "tier")]
    pub tiers: Vec<TierSpec>,
    #[serde(default)]
    pub sim: SimSpec,
}

fn default_schemes() -> Vec<String> {
    vec!["IB_MRC".into()]
}

/// Semantic content of a scenario; the hash is taken over this.
#[derive(Serialize)]
struct Canonical<'a> {
    rx_antennas: u32,
    noise_dbm: Option<f64>,
    schemes: Vec<String>,
    rate_loss: bool,
    grid: &'a GridSpec,
    tiers: Vec<(f64, f64, f64, String)>,
    sim: (u64, u64, u32, u32, String),
}

impl Scenario {
    /// Parses and validates scenario text.
    pub fn parse(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| CliError::Config(format!("scenario: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    /// Reads a scenario file, or a bundled one by name (`table2`,
    /// `equal_alpha`).
    pub fn load(path: &str) -> Result<Self> {
        if let Some(text) = Self::bundled(path) {
            return Self::parse(text);
        }
        let text = std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{path}: {m}")),
            other => other,
        })
    }

    pub fn bundled(name: &str) -> Option<&'static str> {
        match name.trim_end_matches(".scenario") {
            "table2" => Some(TABLE2),
            "equal_alpha" => Some(EQUAL_ALPHA),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let NoiseSpec::Keyword(k) = &self.noise_dbm {
            if k != "none" {
                return Err(CliError::Config(format!("noise_dbm must be a number or \"none\", got \"{k}\"")));
            }
        }
        if self.schemes.is_empty() {
            return Err(CliError::Config("schemes must not be empty".into()));
        }
        self.grid.validate()?;
        if !["genie", "averaged"].contains(&self.sim.estimation.as_str()) {
            return Err(CliError::Config(format!(
                "sim.estimation must be \"genie\" or \"averaged\", got \"{}\"",
                self.sim.estimation
            )));
        }
        self.network()?;
        Ok(())
    }

    pub fn noise_watts(&self) -> f64 {
        match self.noise_dbm {
            NoiseSpec::Dbm(d) => dbm_to_watts(d),
            NoiseSpec::Keyword(_) => 0.0,
        }
    }

    /// The network in SI units (W, BS/m²).
    pub fn network(&self) -> Result<NetworkConfig> {
        let mut tiers = Vec::with_capacity(self.tiers.len());
        for (k, t) in self.tiers.iter().enumerate() {
            let code = OstbcCode::by_name(&t.code).map_err(|e| CliError::Config(format!("tier {}: {e}", k + 1)))?;
            let tier = TierConfig::new(per_km2_to_per_m2(t.density_per_km2), dbm_to_watts(t.power_dbm), t.path_loss_exp, code)
                .map_err(|e| CliError::Config(format!("tier {}: {e}", k + 1)))?;
            tiers.push(tier);
        }
        NetworkConfig::new(tiers, self.rx_antennas, self.noise_watts()).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Linear thresholds of the grid.
    pub fn thresholds(&self) -> Vec<f64> {
        self.grid.thresholds_db().into_iter().map(db_to_linear).collect()
    }

    pub fn sim_config(&self, schemes: Vec<SimScheme>) -> Result<SimConfig> {
        let mut cfg = SimConfig::new(self.network()?, self.thresholds(), schemes);
        cfg.iterations = self.sim.iterations;
        cfg.rng_seed = self.sim.seed;
        cfg.mean_bs_per_tier = self.sim.mean_bs_per_tier;
        cfg.resources_per_frame = self.sim.resources_per_frame;
        cfg.apply_rate_loss = self.rate_loss;
        cfg.estimation = match self.sim.estimation.as_str() {
            "averaged" => InterferenceEstimate::Averaged,
            _ => InterferenceEstimate::Genie,
        };
        Ok(cfg)
    }

    /// 16 hex digits of SHA-256 over the canonical form. Formatting,
    /// comments, key order and spelling variants of code and scheme names do
    /// not change it.
    pub fn hash(&self) -> String {
        let canon = Canonical {
            rx_antennas: self.rx_antennas,
            noise_dbm: match self.noise_dbm {
                NoiseSpec::Dbm(d) => Some(d),
                NoiseSpec::Keyword(_) => None,
            },
            schemes: self.schemes.iter().map(|s| s.trim().to_ascii_uppercase().replace('-', "_")).collect(),
            rate_loss: self.rate_loss,
            grid: &self.grid,
            tiers: self
                .tiers
                .iter()
                .map(|t| {
                    let code = OstbcCode::by_name(&t.code).map_or_else(|_| t.code.clone(), |c| c.name().to_string());
                    (t.density_per_km2, t.power_dbm, t.path_loss_exp, code)
                })
                .collect(),
            sim: (
                self.sim.iterations,
                self.sim.seed,
                self.sim.mean_bs_per_tier,
                self.sim.resources_per_frame,
                self.sim.estimation.clone(),
            ),
        };
        let json = serde_json::to_vec(&canon).expect("scenario serializes");
        let digest = Sha256::digest(&json);
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
