use crate::{NetworkConfig, Result};
use std::f64::consts::PI;

/// Per-tier coupling `c_k(y) = λ_k P̂_k^{2/α_k} y^{2/α̂_k}` seen from serving tier ℓ.
///
/// `π Σ_k c_k(y)` is the mean number of base stations (of all tiers) that
/// would be received more strongly than a tier-ℓ BS at distance `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLossCoupling {
    coef: Vec<f64>,
    expo: Vec<f64>,
}

impl PathLossCoupling {
    pub fn new(net: &NetworkConfig, l: usize) -> Result<Self> {
        net.check_tier(l)?;
        let serving = net.tier(l);
        let (coef, expo) = net
            .tiers()
            .iter()
            .map(|t| {
                let p_hat = t.power / serving.power;
                let alpha_hat = t.path_loss_exp / serving.path_loss_exp;
                (t.density * p_hat.powf(2.0 / t.path_loss_exp), 2.0 / alpha_hat)
            })
            .unzip();
        Ok(Self { coef, expo })
    }

    pub fn num_tiers(&self) -> usize {
        self.coef.len()
    }

    /// `c_k(y)`.
    pub fn c(&self, k: usize, y: f64) -> f64 {
        if y == 0.0 {
            0.0
        } else {
            self.coef[k] * y.powf(self.expo[k])
        }
    }

    /// `λ_k P̂_k^{2/α_k}`.
    pub fn coefficient(&self, k: usize) -> f64 {
        self.coef[k]
    }

    /// `2/α̂_k`.
    pub fn exponent(&self, k: usize) -> f64 {
        self.expo[k]
    }

    /// True when every exponent equals 2 (equal path-loss exponents).
    pub fn is_quadratic(&self) -> bool {
        self.expo.iter().all(|e| (*e - 2.0).abs() < 1e-15)
    }

    /// `π Σ_k w_k c_k(y)`.
    pub fn weighted_envelope(&self, y: f64, w: &[f64]) -> f64 {
        PI * (0..self.coef.len()).map(|k| w[k] * self.c(k, y)).sum::<f64>()
    }

    /// `π Σ_k c_k(y)`.
    pub fn envelope(&self, y: f64) -> f64 {
        PI * (0..self.coef.len()).map(|k| self.c(k, y)).sum::<f64>()
    }

    /// Smallest `y` with `π Σ_k w_k c_k(y) ≥ level`, by bisection on log y.
    pub fn y_at_weighted_envelope(&self, level: f64, w: &[f64]) -> f64 {
        let f = |y: f64| self.weighted_envelope(y, w);
        let mut hi = 1.0;
        while f(hi) < level {
            hi *= 2.0;
        }
        let mut lo = hi;
        while f(lo) >= level && lo > 1e-300 {
            lo *= 0.5;
        }
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if f(mid) >= level {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi / lo - 1.0 < 1e-13 {
                break;
            }
        }
        hi
    }

    pub fn y_at_envelope(&self, level: f64) -> f64 {
        self.y_at_weighted_envelope(level, &vec![1.0; self.coef.len()])
    }
}

/// The typical user's serving tier ℓ and distance y, with the derived
/// per-tier ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct ServingContext {
    pub tier_index: usize,
    pub distance: f64,
    /// `P̂_k = P_k / P_ℓ`.
    pub rel_power: Vec<f64>,
    /// `α̂_k = α_k / α_ℓ`.
    pub rel_alpha: Vec<f64>,
    /// `d_k = P̂_k^{1/α_k} y^{1/α̂_k}`: closest possible tier-k interferer.
    pub excl_radius: Vec<f64>,
    /// `P_ℓ y^{−α_ℓ} / σ²`; `f64::INFINITY` when the network is noise-free.
    pub mean_snr: f64,
}

impl ServingContext {
    pub fn new(net: &NetworkConfig, l: usize, y: f64) -> Result<Self> {
        net.check_tier(l)?;
        let serving = net.tier(l);
        let rel_power: Vec<f64> = net.tiers().iter().map(|t| t.power / serving.power).collect();
        let rel_alpha: Vec<f64> = net
            .tiers()
            .iter()
            .map(|t| t.path_loss_exp / serving.path_loss_exp)
            .collect();
        let excl_radius = net
            .tiers()
            .iter()
            .enumerate()
            .map(|(k, t)| {
                if k == l {
                    y
                } else {
                    rel_power[k].powf(1.0 / t.path_loss_exp) * y.powf(1.0 / rel_alpha[k])
                }
            })
            .collect();
        let mean_snr = if net.is_interference_limited() {
            f64::INFINITY
        } else {
            serving.power * y.powf(-serving.path_loss_exp) / net.noise_power()
        };
        Ok(Self {
            tier_index: l,
            distance: y,
            rel_power,
            rel_alpha,
            excl_radius,
            mean_snr,
        })
    }

    /// `1 / SNR_ℓ(y)`, exactly zero in the interference-limited case.
    pub fn inv_snr(&self) -> f64 {
        if self.mean_snr.is_infinite() {
            0.0
        } else {
            1.0 / self.mean_snr
        }
    }
}
