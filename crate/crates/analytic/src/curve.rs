//! Batch evaluation over a threshold grid.

use crate::{
    coverage_ia_mrc_tiered, coverage_ia_nocorr_tiered, coverage_ib_mrc_tiered, coverage_sc_tiered, AnalyticError,
    CoverageEstimate, Result,
};
use hetdiv_hetnet::{rate_adjusted_threshold, NetworkConfig};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Receiver / analysis model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    IbMrc,
    IaMrc,
    Sc,
    /// IA-MRC under the no-correlation interference model.
    IaNc,
    /// IA-MRC under the full-correlation interference model.
    IaFc,
    Siso,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::IbMrc,
        Scheme::IaMrc,
        Scheme::Sc,
        Scheme::IaNc,
        Scheme::IaFc,
        Scheme::Siso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::IbMrc => "IB_MRC",
            Scheme::IaMrc => "IA_MRC",
            Scheme::Sc => "SC",
            Scheme::IaNc => "IA_NC",
            Scheme::IaFc => "IA_FC",
            Scheme::Siso => "SISO",
        }
    }

    /// Checks the configuration limits of the scheme's analysis.
    pub fn check(self, net: &NetworkConfig) -> Result<()> {
        match self {
            Scheme::IaMrc | Scheme::IaNc => {
                if net.rx_antennas() != 2 {
                    return Err(AnalyticError::Unsupported(format!(
                        "{} needs N = 2, got {}",
                        self,
                        net.rx_antennas()
                    )));
                }
                if let Some(t) = net.tiers().iter().find(|t| t.m_tx() > 2 || t.s_active() != t.m_tx()) {
                    return Err(AnalyticError::Unsupported(format!(
                        "{} needs M_k <= 2 with all antennas active, found code {}",
                        self,
                        t.code.name()
                    )));
                }
            }
            Scheme::Sc => {
                if net.tiers().iter().any(|t| t.m_tx() != 1) {
                    return Err(AnalyticError::Unsupported("SC needs M_k = 1 in every tier".into()));
                }
            }
            Scheme::IbMrc | Scheme::IaFc | Scheme::Siso => {}
        }
        Ok(())
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = AnalyticError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == key)
            .ok_or_else(|| {
                AnalyticError::Invalid(format!(
                    "unknown scheme '{s}' (expected one of IB_MRC, IA_MRC, SC, IA_NC, IA_FC, SISO)"
                ))
            })
    }
}

/// Coverage of `scheme` with per-serving-tier thresholds.
pub fn coverage(net: &NetworkConfig, scheme: Scheme, thresholds: &[f64]) -> Result<CoverageEstimate> {
    scheme.check(net)?;
    match scheme {
        Scheme::IbMrc | Scheme::IaFc => coverage_ib_mrc_tiered(net, thresholds),
        Scheme::IaMrc => coverage_ia_mrc_tiered(net, thresholds),
        Scheme::IaNc => coverage_ia_nocorr_tiered(net, thresholds),
        Scheme::Sc => coverage_sc_tiered(net, thresholds),
        Scheme::Siso => coverage_ib_mrc_tiered(&net.siso(), thresholds),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageQuery {
    net: NetworkConfig,
    thresholds: Vec<f64>,
    scheme: Scheme,
    apply_rate_loss: bool,
}

impl CoverageQuery {
    /// Thresholds are linear SINR values, strictly positive and ascending.
    pub fn new(net: NetworkConfig, thresholds: Vec<f64>, scheme: Scheme, apply_rate_loss: bool) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(AnalyticError::Invalid("threshold list is empty".into()));
        }
        if let Some(t) = thresholds.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(AnalyticError::Invalid(format!("threshold {t} is not positive and finite")));
        }
        if thresholds.windows(2).any(|w| w[1] <= w[0]) {
            return Err(AnalyticError::Invalid("thresholds must be strictly ascending".into()));
        }
        scheme.check(&net)?;
        Ok(Self {
            net,
            thresholds,
            scheme,
            apply_rate_loss,
        })
    }

    pub fn net(&self) -> &NetworkConfig {
        &self.net
    }
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
    pub fn apply_rate_loss(&self) -> bool {
        self.apply_rate_loss
    }

    /// Per-serving-tier thresholds for a common target `t`; with rate loss
    /// each tier needs `(1+t)^{1/r_ℓ} − 1` to carry the same information.
    pub fn tier_thresholds(&self, t: f64) -> Vec<f64> {
        self.net
            .tiers()
            .iter()
            .map(|tier| {
                if self.apply_rate_loss && self.scheme != Scheme::Siso {
                    rate_adjusted_threshold(t, &tier.code)
                } else {
                    t
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Simulated,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Simulated => "simulated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCurve {
    pub query: CoverageQuery,
    /// `(threshold, probability)`, thresholds linear.
    pub points: Vec<(f64, f64)>,
    pub method: Method,
    pub est_abs_error: Vec<f64>,
}

/// Evaluates the query's scheme at every threshold, in parallel. The result
/// does not depend on the thread schedule.
pub fn evaluate_curve(q: &CoverageQuery) -> Result<CoverageCurve> {
    let results: Vec<Result<CoverageEstimate>> = q
        .thresholds
        .par_iter()
        .map(|&t| coverage(&q.net, q.scheme, &q.tier_thresholds(t)))
        .collect();
    let mut failures = Vec::new();
    let mut est = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(e) => est.push(e),
            Err(e) => failures.push((i, e)),
        }
    }
    if !failures.is_empty() {
        return Err(AnalyticError::Curve(failures));
    }
    let mut points = Vec::with_capacity(est.len());
    let mut errors = Vec::with_capacity(est.len());
    let mut prev: Option<(f64, f64)> = None;
    for (t, e) in q.thresholds.iter().zip(&est) {
        let mut p = e.value;
        let tol = e.abs_error + 1e-9;
        if !(-tol..=1.0 + tol).contains(&p) {
            return Err(AnalyticError::Invalid(format!(
                "{} coverage {p} at T = {t} outside [0, 1]",
                q.scheme
            )));
        }
        p = p.clamp(0.0, 1.0);
        if let Some((pp, pe)) = prev {
            if p > pp {
                // Quadrature noise on a flat stretch; anything larger is a bug.
                if p - pp > tol + pe {
                    return Err(AnalyticError::Invalid(format!(
                        "{} coverage increases from {pp} to {p} at T = {t}",
                        q.scheme
                    )));
                }
                p = pp;
            }
        }
        prev = Some((p, e.abs_error));
        points.push((*t, p));
        errors.push(e.abs_error);
    }
    Ok(CoverageCurve {
        query: q.clone(),
        points,
        method: Method::Analytic,
        est_abs_error: errors,
    })
}

/// `count` thresholds (linear) evenly spaced in dB over `[start_db, stop_db]`.
pub fn db_grid(start_db: f64, stop_db: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![10f64.powf(start_db / 10.0)],
        _ => (0..count)
            .map(|i| {
                let db = start_db + (stop_db - start_db) * i as f64 / (count - 1) as f64;
                10f64.powf(db / 10.0)
            })
            .collect(),
    }
}

/// 41 thresholds from −10 dB to 20 dB.
pub fn default_grid() -> Vec<f64> {
    db_grid(-10.0, 20.0, 41)
}
