//! Interference-blind MRC, plus the full-correlation IA model that reduces to it.
//!
//! Conditioned on the serving tier ℓ and distance y the coverage is a sum of
//! Taylor coefficients in σ = 1 − s of
//! `exp(−s S_ℓ T / SNR_ℓ(y) − π Σ_k c_k(y) ₂F₁(−2/α_k, S_k; 1−2/α_k; −sT/Ŝ_k))`.
//! In σ the exponent has positive coefficients beyond order zero, so the
//! coefficients of its exponential are all positive and the sum over m is
//! free of cancellation. Coverage keeps orders `m < N M_ℓ`; outage is the
//! sum of the remaining ones.

use crate::common::{
    check_alpha, check_threshold, check_thresholds, noise_term, require_converged, sum_terms, y_breaks,
    TAIL_QUAD, Y_QUAD,
};
use crate::{AnalyticError, CoverageEstimate, Result};
use hetdiv_core::quad::{integrate_vec_breaks, QuadConfig, QuadOutput};
use hetdiv_core::series::{exp_series, recip_series};
use hetdiv_core::specfun::{hyp2f1_sigma_coeffs, HyperGeomArgs};
use hetdiv_hetnet::{NetworkConfig, PathLossCoupling};
use std::f64::consts::PI;

/// Orders summed for a direct outage. The hypergeometric jets lose relative
/// accuracy far beyond this.
const OUTAGE_ORDERS: usize = 48;

/// σ-coefficients of `₂F₁(−2/α_k, S_k; 1−2/α_k; −T(1−σ)/Ŝ_k)` for every tier k.
fn interference_jets(net: &NetworkConfig, l: usize, t: f64, order: usize) -> Result<Vec<Vec<f64>>> {
    let s_l = net.tier(l).s_active() as f64;
    net.tiers()
        .iter()
        .enumerate()
        .map(|(k, tk)| {
            let s_k = tk.s_active() as f64;
            let scale = t * s_l / s_k;
            hyp2f1_sigma_coeffs(HyperGeomArgs::family(tk.path_loss_exp, s_k, scale), scale, order)
                .map_err(|e| AnalyticError::numerical(format!("serving tier {l}, interfering tier {k}"), e))
        })
        .collect()
}

/// `2πλ_ℓ ∫ y Q_m(y) dy` for `m = lo..=hi`.
fn tier_terms(net: &NetworkConfig, l: usize, t: f64, lo: usize, hi: usize, cfg: &QuadConfig) -> Result<QuadOutput> {
    let pc = PathLossCoupling::new(net, l)?;
    let jets = interference_jets(net, l, t, hi)?;
    let tier = net.tier(l);
    let noise = noise_term(net, l, tier.s_active() as f64 * t);
    let weights: Vec<f64> = jets.iter().map(|j| j[0]).collect();
    let breaks = y_breaks(&pc, hi, &weights);
    let lambda = tier.density;
    let mut e = vec![0.0; hi + 1];
    let out = integrate_vec_breaks(
        |y, out| {
            e.iter_mut().for_each(|v| *v = 0.0);
            for (k, jet) in jets.iter().enumerate() {
                let c = PI * pc.c(k, y);
                for (ej, fj) in e.iter_mut().zip(jet) {
                    *ej -= c * fj;
                }
            }
            if let Some(nz) = &noise {
                let v = nz.at(y);
                e[0] -= v;
                if hi >= 1 {
                    e[1] += v;
                }
            }
            let q = exp_series(&e);
            for m in lo..=hi {
                out[m - lo] = 2.0 * PI * lambda * y * q[m];
            }
        },
        &breaks,
        hi - lo + 1,
        cfg,
    );
    require_converged(&out, format!("IB y-integral, tier {l}, orders {lo}..={hi}"), "coverage_ib_mrc")?;
    Ok(out)
}

/// IB-MRC coverage with a separate threshold for each serving tier.
pub fn coverage_ib_mrc_tiered(net: &NetworkConfig, thresholds: &[f64]) -> Result<CoverageEstimate> {
    check_thresholds(net, thresholds)?;
    let mut total = Vec::new();
    let mut err = 0.0;
    let mut largest = 0.0f64;
    for (l, &t) in thresholds.iter().enumerate() {
        let d = (net.rx_antennas() * net.tier(l).m_tx()) as usize;
        let out = tier_terms(net, l, t, 0, d - 1, &Y_QUAD)?;
        largest = largest.max(out.values.iter().fold(0.0, |m, v| m.max(v.abs())));
        total.extend(out.values);
        err += out.errors.iter().sum::<f64>();
    }
    let (value, _) = sum_terms(total, "IB-MRC coverage");
    Ok(CoverageEstimate {
        value,
        abs_error: err,
        largest_term: largest,
    })
}

/// Coverage probability of IB-MRC at SINR threshold `t` (linear).
pub fn coverage_ib_mrc(net: &NetworkConfig, t: f64) -> Result<f64> {
    check_threshold(t)?;
    Ok(coverage_ib_mrc_tiered(net, &vec![t; net.num_tiers()])?.value)
}

/// Coverage of the full-correlation IA-MRC model, which coincides with IB-MRC.
pub fn coverage_ia_fullcorr(net: &NetworkConfig, t: f64) -> Result<f64> {
    coverage_ib_mrc(net, t)
}

/// `1 − P_c` for IB-MRC. Small outages are summed directly from the
/// omitted orders so that they keep their relative accuracy; when that
/// series converges slowly the outage is large and `1 − P_c` is used.
pub fn outage_ib_mrc(net: &NetworkConfig, t: f64) -> Result<f64> {
    let p = coverage_ib_mrc(net, t)?;
    if p < 0.5 {
        return Ok(1.0 - p);
    }
    let mut terms = Vec::new();
    for l in 0..net.num_tiers() {
        let d = (net.rx_antennas() * net.tier(l).m_tx()) as usize;
        let out = tier_terms(net, l, t, d, d + OUTAGE_ORDERS, &TAIL_QUAD)?;
        let sum: f64 = out.values.iter().sum();
        if *out.values.last().expect("at least one order") > 1e-15 * sum {
            return Ok(1.0 - p);
        }
        terms.extend(out.values);
    }
    Ok(sum_terms(terms, "IB-MRC outage").0)
}

/// IB-MRC coverage without noise and with one path-loss exponent for all
/// tiers; independent of densities and powers.
pub fn coverage_ib_mrc_simplified(alpha: f64, n_rx: u32, s_active: u32, m_tx: u32, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    if n_rx == 0 || s_active == 0 || m_tx == 0 {
        return Err(AnalyticError::Invalid("antenna counts must be positive".into()));
    }
    let d = (n_rx * m_tx) as usize;
    let f = hyp2f1_sigma_coeffs(HyperGeomArgs::family(alpha, s_active as f64, t), t, d - 1)
        .map_err(|e| AnalyticError::numerical("IB simplified", e))?;
    // 1/F has positive σ-coefficients since F's are negative beyond order 0.
    Ok(sum_terms(recip_series(&f), "IB-MRC simplified").0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hetdiv_hetnet::{presets, OstbcCode};

    #[test]
    fn siso_alpha4_closed_form() {
        let net = presets::single_tier(4.0, OstbcCode::siso(), 1);
        let p = coverage_ib_mrc(&net, 1.0).unwrap();
        assert!((p - 1.0 / (1.0 + PI / 4.0)).abs() < 1e-9, "{p}");
    }

    #[test]
    fn coverage_and_outage_add_to_one() {
        let net = presets::table2(2, Some(-104.0));
        let p = coverage_ib_mrc(&net, 2.0).unwrap();
        let o = outage_ib_mrc(&net, 2.0).unwrap();
        assert!((p + o - 1.0).abs() < 1e-8, "{p} + {o}");
    }
}
