//! Selection combining with single-antenna transmitters.
//!
//! Inclusion–exclusion over the antennas that fail gives an alternating sum
//! over n of `C(N,n)` times the probability that n given antennas all see
//! SINR ≥ T; the latter has a single ₂F₁ with second parameter n.

use crate::common::{
    check_alpha, check_threshold, check_thresholds, noise_term, require_converged, sum_terms, y_cutoff, Y_QUAD,
};
use crate::{AnalyticError, CoverageEstimate, Result};
use hetdiv_core::quad::integrate_vec;
use hetdiv_core::specfun::{hyp2f1, HyperGeomArgs};
use hetdiv_hetnet::{NetworkConfig, PathLossCoupling};
use std::f64::consts::PI;

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

fn check_sc(net: &NetworkConfig) -> Result<()> {
    if let Some((k, t)) = net.tiers().iter().enumerate().find(|(_, t)| t.m_tx() != 1) {
        return Err(AnalyticError::Unsupported(format!(
            "selection combining analysis needs M_k = 1; tier {k} has M = {}",
            t.m_tx()
        )));
    }
    Ok(())
}

/// SC coverage with a separate threshold for each serving tier.
pub fn coverage_sc_tiered(net: &NetworkConfig, thresholds: &[f64]) -> Result<CoverageEstimate> {
    check_sc(net)?;
    check_thresholds(net, thresholds)?;
    let n_rx = net.rx_antennas();
    let mut terms = Vec::new();
    let mut err = 0.0;
    for (l, &t) in thresholds.iter().enumerate() {
        let pc = PathLossCoupling::new(net, l)?;
        // f[n-1][k] = ₂F₁(−2/α_k, n; 1−2/α_k; −T)
        let f = (1..=n_rx)
            .map(|n| {
                net.tiers()
                    .iter()
                    .map(|tk| hyp2f1(HyperGeomArgs::family(tk.path_loss_exp, n as f64, t)))
                    .collect::<std::result::Result<Vec<f64>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| AnalyticError::numerical(format!("SC, serving tier {l}"), e))?;
        let noise = noise_term(net, l, t);
        let lambda = net.tier(l).density;
        // n = 1 decays slowest.
        let y_max = pc.y_at_weighted_envelope(y_cutoff(0), &f[0]);
        let out = integrate_vec(
            |y, out| {
                let v = noise.map_or(0.0, |nz| nz.at(y));
                let c: Vec<f64> = (0..net.num_tiers()).map(|k| PI * pc.c(k, y)).collect();
                for (n, fk) in f.iter().enumerate() {
                    let e: f64 = c.iter().zip(fk).map(|(c, f)| c * f).sum::<f64>() + (n + 1) as f64 * v;
                    out[n] = 2.0 * PI * lambda * y * (-e).exp();
                }
            },
            0.0,
            y_max,
            n_rx as usize,
            &Y_QUAD,
        );
        require_converged(&out, format!("SC y-integral, tier {l}"), "coverage_sc")?;
        for (i, (v, e)) in out.values.iter().zip(&out.errors).enumerate() {
            let n = i as u32 + 1;
            let w = binomial(n_rx, n) * if n % 2 == 1 { 1.0 } else { -1.0 };
            terms.push(w * v);
            err += w.abs() * e;
        }
    }
    let largest = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (value, _) = sum_terms(terms, "SC coverage");
    Ok(CoverageEstimate {
        value,
        abs_error: err,
        largest_term: largest,
    })
}

/// Coverage probability of N-antenna selection combining (M_k = 1).
pub fn coverage_sc(net: &NetworkConfig, t: f64) -> Result<f64> {
    check_threshold(t)?;
    Ok(coverage_sc_tiered(net, &vec![t; net.num_tiers()])?.value)
}

/// SC coverage without noise and with one path-loss exponent:
/// `Σ_n (−1)^{n+1} C(N,n) / ₂F₁(−2/α, n; 1−2/α; −T)`.
pub fn coverage_sc_simplified(alpha: f64, n_rx: u32, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    if n_rx == 0 {
        return Err(AnalyticError::Invalid("n_rx must be positive".into()));
    }
    let terms = (1..=n_rx)
        .map(|n| {
            let f = hyp2f1(HyperGeomArgs::family(alpha, n as f64, t))
                .map_err(|e| AnalyticError::numerical("SC simplified", e))?;
            Ok(binomial(n_rx, n) * if n % 2 == 1 { 1.0 } else { -1.0 } / f)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(sum_terms(terms, "SC simplified").0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(4, 4), 1.0);
        assert_eq!(binomial(2, 1), 2.0);
    }
}
