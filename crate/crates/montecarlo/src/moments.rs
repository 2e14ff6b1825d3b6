//! Second-order statistics of the normalized per-antenna interference
//! `I'_n = (I_n + σ²) / (P_ℓ y^{−α_ℓ})`.
//!
//! Variance and covariance are the conditional ones given the serving tier
//! and distance, averaged over the association. They are estimated from two
//! independent interferer fields drawn for the same association:
//! `E[(a − b)²]/2 = Var` and `E[(a_u − b_u)(a_v − b_v)]/2 = Cov`.

use crate::field::{cn01, InterferenceField};
use crate::geometry::{drop_tier, Geometry};
use crate::run::iteration_rng;
use crate::{sample_geometry, Result, SimError};
use hetdiv_hetnet::NetworkConfig;
use rand::Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub samples: u64,
    /// Mean of `I'_n` over antennas and samples.
    pub mean: f64,
    /// Association-averaged conditional variance of `I'_n`.
    pub variance: f64,
    pub variance_se: f64,
    /// Conditional covariance between two antennas; needs N ≥ 2.
    pub covariance: Option<f64>,
    /// `covariance / variance`.
    pub correlation: Option<f64>,
}

/// Per-sample contributions: (mean, variance term, covariance term).
pub(crate) type MomentTerms = (f64, f64, Option<f64>);

pub(crate) fn moment_terms(net: &NetworkConfig, geom: &Geometry, a: &InterferenceField, b: &InterferenceField) -> MomentTerms {
    terms_from_powers(net, geom, &a.per_antenna(net, 1), &b.per_antenna(net, 1))
}

fn terms_from_powers(net: &NetworkConfig, geom: &Geometry, a: &[f64], b: &[f64]) -> MomentTerms {
    let t = net.tier(geom.serving_tier);
    let scale = geom.y.powf(t.path_loss_exp) / t.power;
    let ia: Vec<f64> = a.iter().map(|v| v * scale).collect();
    let ib: Vec<f64> = b.iter().map(|v| v * scale).collect();
    let n = ia.len();
    let d: Vec<f64> = ia.iter().zip(&ib).map(|(x, y)| x - y).collect();
    let mean = ia.iter().sum::<f64>() / n as f64 + net.noise_power() * scale;
    let var = d.iter().map(|x| x * x).sum::<f64>() / (2.0 * n as f64);
    let cov = (n >= 2).then(|| {
        let mut s = 0.0;
        for u in 0..n {
            for v in u + 1..n {
                s += d[u] * d[v];
            }
        }
        s / (n * (n - 1)) as f64
    });
    (mean, var, cov)
}

pub(crate) fn summarize(terms: &[MomentTerms]) -> MomentReport {
    let n = terms.len() as f64;
    let mean = terms.iter().map(|t| t.0).sum::<f64>() / n;
    let variance = terms.iter().map(|t| t.1).sum::<f64>() / n;
    let spread = terms.iter().map(|t| (t.1 - variance).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    let covariance = terms
        .iter()
        .map(|t| t.2)
        .sum::<Option<f64>>()
        .map(|s| s / n);
    MomentReport {
        samples: terms.len() as u64,
        mean,
        variance,
        variance_se: (spread / n).sqrt(),
        covariance,
        correlation: covariance.map(|c| c / variance),
    }
}

/// Adds the first-slot interference of a tier-k BS at distance r to `out`.
/// Same law as [`InterferenceField::per_antenna`] with a one-slot window;
/// only the channel entries of the active antennas are drawn.
fn add_first_slot<R: Rng>(net: &NetworkConfig, k: usize, r: f64, rng: &mut R, out: &mut [f64]) {
    let t = net.tier(k);
    let pattern = t.code.activation_pattern();
    let active = &pattern[rng.random_range(0..pattern.len())];
    let p = t.power / (t.s_active() as f64 * r.powf(t.path_loss_exp));
    for o in out.iter_mut() {
        let g: f64 = active.iter().filter(|a| **a).map(|_| cn01(rng).norm_sqr()).sum();
        *o += p * g;
    }
}

/// Estimates the interference moments from `samples` independent drops.
/// Deterministic in `seed`.
pub fn interference_moments(net: &NetworkConfig, samples: u64, mean_bs: u32, seed: u64) -> Result<MomentReport> {
    if samples < 2 {
        return Err(SimError::Config("at least two samples are needed".into()));
    }
    let n_rx = net.rx_antennas() as usize;
    let terms: Vec<MomentTerms> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = iteration_rng(seed, i);
            let geom = sample_geometry(net, mean_bs, &mut rng)?;
            let mut a = vec![0.0; n_rx];
            for (k, r) in geom.interferers() {
                add_first_slot(net, k, r, &mut rng, &mut a);
            }
            // Independent field with the same association, as in
            // `sample_conditional_field`.
            let s = net.tier(geom.serving_tier);
            let level = s.power.ln() - s.path_loss_exp * geom.y.ln();
            let mut b = vec![0.0; n_rx];
            for (k, t) in net.tiers().iter().enumerate() {
                for r in drop_tier(&mut rng, mean_bs, t.density) {
                    if t.power.ln() - t.path_loss_exp * r.ln() < level {
                        add_first_slot(net, k, r, &mut rng, &mut b);
                    }
                }
            }
            Ok(terms_from_powers(net, &geom, &a, &b))
        })
        .collect::<Result<_>>()?;
    Ok(summarize(&terms))
}
