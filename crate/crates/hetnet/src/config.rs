use crate::{HetNetError, OstbcCode, Result};

/// One tier of base stations.
#[derive(Debug, Clone, PartialEq)]
pub struct TierConfig {
    /// λ_k in BS/m².
    pub density: f64,
    /// P_k in watts.
    pub power: f64,
    /// α_k > 2.
    pub path_loss_exp: f64,
    pub code: OstbcCode,
}

impl TierConfig {
    pub fn new(density: f64, power: f64, path_loss_exp: f64, code: OstbcCode) -> Result<Self> {
        let t = Self {
            density,
            power,
            path_loss_exp,
            code,
        };
        t.validate(0)?;
        Ok(t)
    }

    fn validate(&self, k: usize) -> Result<()> {
        if !(self.density > 0.0 && self.density.is_finite()) {
            return Err(HetNetError::Config(format!("tier {k}: density must be positive, got {}", self.density)));
        }
        if !(self.power > 0.0 && self.power.is_finite()) {
            return Err(HetNetError::Config(format!("tier {k}: power must be positive, got {}", self.power)));
        }
        if !(self.path_loss_exp > 2.0 && self.path_loss_exp.is_finite()) {
            return Err(HetNetError::Config(format!(
                "tier {k}: path-loss exponent must exceed 2, got {}",
                self.path_loss_exp
            )));
        }
        Ok(())
    }

    pub fn m_tx(&self) -> u32 {
        self.code.m_tx()
    }

    pub fn s_active(&self) -> u32 {
        self.code.s_active()
    }
}

/// Tiers, receive antennas and noise power.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    tiers: Vec<TierConfig>,
    rx_antennas: u32,
    noise_power: f64,
}

impl NetworkConfig {
    /// `noise_power = 0` selects the interference-limited regime.
    pub fn new(tiers: Vec<TierConfig>, rx_antennas: u32, noise_power: f64) -> Result<Self> {
        if tiers.is_empty() {
            return Err(HetNetError::Config("at least one tier is required".into()));
        }
        for (k, t) in tiers.iter().enumerate() {
            t.validate(k)?;
        }
        if rx_antennas == 0 {
            return Err(HetNetError::Config("rx_antennas must be at least 1".into()));
        }
        if !(noise_power >= 0.0 && noise_power.is_finite()) {
            return Err(HetNetError::Config(format!("noise power must be >= 0, got {noise_power}")));
        }
        Ok(Self {
            tiers,
            rx_antennas,
            noise_power,
        })
    }

    pub fn tiers(&self) -> &[TierConfig] {
        &self.tiers
    }

    pub fn tier(&self, k: usize) -> &TierConfig {
        &self.tiers[k]
    }

    pub fn num_tiers(&self) -> usize {
        self.tiers.len()
    }

    pub fn rx_antennas(&self) -> u32 {
        self.rx_antennas
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn is_interference_limited(&self) -> bool {
        self.noise_power == 0.0
    }

    pub fn with_rx_antennas(&self, n: u32) -> Result<Self> {
        Self::new(self.tiers.clone(), n, self.noise_power)
    }

    pub fn with_noise_power(&self, noise: f64) -> Result<Self> {
        Self::new(self.tiers.clone(), self.rx_antennas, noise)
    }

    /// Same geometry with one receive antenna and single-antenna transmitters.
    pub fn siso(&self) -> Self {
        let tiers = self
            .tiers
            .iter()
            .map(|t| TierConfig {
                code: OstbcCode::siso(),
                ..t.clone()
            })
            .collect();
        Self {
            tiers,
            rx_antennas: 1,
            noise_power: self.noise_power,
        }
    }

    /// Replaces every tier's code.
    pub fn with_code(&self, code: &OstbcCode) -> Self {
        let tiers = self
            .tiers
            .iter()
            .map(|t| TierConfig {
                code: code.clone(),
                ..t.clone()
            })
            .collect();
        Self {
            tiers,
            ..self.clone()
        }
    }

    pub(crate) fn check_tier(&self, l: usize) -> Result<()> {
        if l >= self.tiers.len() {
            return Err(HetNetError::Config(format!(
                "tier index {l} out of range (network has {} tiers)",
                self.tiers.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid() {
        let c = OstbcCode::siso();
        assert!(TierConfig::new(0.0, 1.0, 3.0, c.clone()).is_err());
        assert!(TierConfig::new(1.0, -1.0, 3.0, c.clone()).is_err());
        assert!(TierConfig::new(1.0, 1.0, 2.0, c.clone()).is_err());
        let t = TierConfig::new(1e-5, 1.0, 3.0, c).unwrap();
        assert!(NetworkConfig::new(vec![], 1, 0.0).is_err());
        assert!(NetworkConfig::new(vec![t.clone()], 0, 0.0).is_err());
        assert!(NetworkConfig::new(vec![t.clone()], 1, -1.0).is_err());
        assert!(NetworkConfig::new(vec![t], 2, 0.0).unwrap().is_interference_limited());
    }
}
