//! Interference-aware MRC with two receive antennas.
//!
//! With per-antenna SINRs X_1, X_2 (Gamma(M_ℓ) desired gains),
//! `P(X_1 + X_2 ≥ T) = ∫ f_{X_2}(z) P(X_1 ≥ (T−z)^+) dz`. Conditioned on
//! (ℓ, y) the mixed s/t derivatives at s = t = 1 are Taylor coefficients of
//! the Laplace functional in σ = 1−s, τ = 1−t. In the scaled variables
//! σ̃ = (T−z)σ and τ̃ = zτ the `z^{−1}` prefactor cancels analytically and
//!
//! `P = 2π Σ_ℓ λ_ℓ M_ℓ Σ_{m<M_ℓ} ∫ (T−z)_+^m z^{M_ℓ−1} ∫ y Q̃_{m,M_ℓ}(y; z) dy dz`,
//!
//! where Q̃ is the exponential of a series whose non-constant coefficients
//! are positive. For z > T only m = 0 remains and Ψ(0, b) + 1 is a single
//! ₂F₁, so the tail uses hypergeometric jets after mapping z = T x^{−κ}.

use crate::common::{
    check_alpha, check_threshold, check_thresholds, noise_term, require_converged, sum_terms, y_breaks, y_cutoff,
    FirstError, OUTER_QUAD, PSI_REL_TOL, TAIL_QUAD, Y_QUAD,
};
use crate::{AnalyticError, CoverageEstimate, Result};
use hetdiv_core::cheb::{cheb_derivatives, mixed_cheb_derivatives, ChebyshevDiffPlan};
use hetdiv_core::quad::{integrate_vec, integrate_vec_breaks, QuadConfig, QuadOutput};
use hetdiv_core::series::{recip_series, Series2};
use hetdiv_core::specfun::{hyp2f1_sigma_coeffs, psi_reduced_coeffs, HyperGeomArgs};
use hetdiv_core::NumError;
use hetdiv_hetnet::{NetworkConfig, PathLossCoupling};
use std::convert::Infallible;
use std::f64::consts::PI;

/// Orders summed for a direct outage.
const OUTAGE_ORDERS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Correlation {
    Exact,
    /// Interference at the two antennas treated as independent.
    Independent,
}

fn check_ia(net: &NetworkConfig) -> Result<()> {
    if net.rx_antennas() != 2 {
        return Err(AnalyticError::Unsupported(format!(
            "IA-MRC analysis needs N = 2 receive antennas, got {}",
            net.rx_antennas()
        )));
    }
    for (k, t) in net.tiers().iter().enumerate() {
        if t.m_tx() > 2 || t.s_active() != t.m_tx() {
            return Err(AnalyticError::Unsupported(format!(
                "IA-MRC analysis needs M_k <= 2 with all antennas active; tier {k} uses {}",
                t.code.name()
            )));
        }
    }
    Ok(())
}

/// `F(x(1−σ))` σ-coefficients for `F = ₂F₁(−2/q, p; 1−2/q; −·)`.
fn f_jets(q: f64, p: u32, x: f64, order: usize) -> std::result::Result<Vec<f64>, NumError> {
    hyp2f1_sigma_coeffs(HyperGeomArgs::family(q, p as f64, x), x, order)
}

/// For every tier k, the series multiplying `π c_k(y)` in the exponent, in
/// the scaled variables (σ̃, τ̃), at `a = (T−z)^+`, `b = z`.
fn exponent_series(
    net: &NetworkConfig,
    l: usize,
    a: f64,
    b: f64,
    ni: usize,
    nj: usize,
    corr: Correlation,
) -> Result<Vec<Series2>> {
    debug_assert!(a > 0.0 || ni == 0);
    let m_l = net.tier(l).m_tx() as f64;
    net.tiers()
        .iter()
        .enumerate()
        .map(|(k, tk)| {
            let (p, q) = (tk.m_tx(), tk.path_loss_exp);
            let mh = p as f64 / m_l;
            let (ak, bk) = (a / mh, b / mh);
            let wrap = |e| AnalyticError::numerical(format!("serving tier {l}, tier {k}, z-split a={a}, b={b}"), e);
            let mut s = Series2::zeros(ni, nj);
            if a == 0.0 || corr == Correlation::Independent {
                let ca = if a == 0.0 { vec![1.0] } else { f_jets(q, p, ak, ni).map_err(wrap)? };
                let cb = f_jets(q, p, bk, nj).map_err(wrap)?;
                s.set(0, 0, -(ca[0] + cb[0] - 1.0));
                for (i, c) in ca.iter().enumerate().skip(1) {
                    s.set(i, 0, -c / a.powi(i as i32));
                }
                for (j, c) in cb.iter().enumerate().skip(1) {
                    s.set(0, j, -c / b.powi(j as i32));
                }
            } else {
                let kap = psi_reduced_coeffs(ak, bk, p, q, ni, nj, PSI_REL_TOL).map_err(wrap)?;
                for (i, row) in kap.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if i + j == 0 {
                            s.set(0, 0, -(1.0 + v));
                        } else {
                            s.set(i, j, v / mh.powi((i + j) as i32));
                        }
                    }
                }
            }
            Ok(s)
        })
        .collect()
}

/// `2πλ_ℓ ∫ y Q̃_{m,M_ℓ}(y) dy` for `m = lo..=hi` at fixed (a, b).
#[allow(clippy::too_many_arguments)]
fn y_integral(
    net: &NetworkConfig,
    l: usize,
    pc: &PathLossCoupling,
    a: f64,
    b: f64,
    ser: &[Series2],
    lo: usize,
    hi: usize,
) -> Result<QuadOutput> {
    let tier = net.tier(l);
    let m = tier.m_tx() as usize;
    let lambda = tier.density;
    let noise = noise_term(net, l, m as f64);
    let weights: Vec<f64> = ser.iter().map(|s| -s.get(0, 0)).collect();
    let breaks = y_breaks(pc, hi + m, &weights);
    let (ni, nj) = ser[0].orders();
    let mut e = Series2::zeros(ni, nj);
    let out = integrate_vec_breaks(
        |y, out| {
            e.fill(0.0);
            for (k, s) in ser.iter().enumerate() {
                e.axpy(PI * pc.c(k, y), s);
            }
            if let Some(nz) = &noise {
                let v = nz.at(y);
                e.add_to(0, 0, -v * (a + b));
                if ni >= 1 {
                    e.add_to(1, 0, v);
                }
                if nj >= 1 {
                    e.add_to(0, 1, v);
                }
            }
            let q = e.exp();
            for mm in lo..=hi {
                out[mm - lo] = 2.0 * PI * lambda * y * q.get(mm, m);
            }
        },
        &breaks,
        hi - lo + 1,
        &Y_QUAD,
    );
    require_converged(&out, format!("IA y-integral, tier {l}, a={a}, b={b}"), "coverage_ia_mrc")?;
    Ok(out)
}

/// z ∈ (0, T) contribution of orders `lo..=hi` for serving tier `l`.
fn body_terms(
    net: &NetworkConfig,
    l: usize,
    t: f64,
    lo: usize,
    hi: usize,
    corr: Correlation,
    cfg: &QuadConfig,
) -> Result<QuadOutput> {
    let pc = PathLossCoupling::new(net, l)?;
    let m = net.tier(l).m_tx() as usize;
    let mut fail = FirstError::new();
    let out = integrate_vec(
        |z, out| {
            out.iter_mut().for_each(|v| *v = 0.0);
            if fail.is_set() {
                return;
            }
            let (a, b) = (t - z, z);
            let r = exponent_series(net, l, a, b, hi, m, corr)
                .and_then(|ser| y_integral(net, l, &pc, a, b, &ser, lo, hi));
            match r {
                Ok(y) => {
                    for mm in lo..=hi {
                        out[mm - lo] = m as f64 * a.powi(mm as i32) * b.powi(m as i32 - 1) * y.values[mm - lo];
                    }
                }
                Err(e) => fail.record(e),
            }
        },
        0.0,
        t,
        hi - lo + 1,
        cfg,
    );
    fail.into_result()?;
    require_converged(&out, format!("IA z-integral on (0, T), tier {l}"), "coverage_ia_mrc")?;
    Ok(out)
}

/// Exponent of the z = T x^{−κ} map; makes the tail integrand bounded at x → 0.
fn tail_exponent(net: &NetworkConfig) -> f64 {
    net.tiers().iter().map(|t| t.path_loss_exp).fold(0.0, f64::max) / 2.0
}

/// z > T contribution (m = 0 only) for serving tier `l`.
fn tail_term(net: &NetworkConfig, l: usize, t: f64) -> Result<QuadOutput> {
    let pc = PathLossCoupling::new(net, l)?;
    let m = net.tier(l).m_tx() as usize;
    let kappa = tail_exponent(net);
    let mut fail = FirstError::new();
    let out = integrate_vec(
        |x, out| {
            out[0] = 0.0;
            if fail.is_set() || x == 0.0 {
                return;
            }
            let z = t * x.powf(-kappa);
            let jac = kappa * z / x;
            let r = exponent_series(net, l, 0.0, z, 0, m, Correlation::Exact)
                .and_then(|ser| y_integral(net, l, &pc, 0.0, z, &ser, 0, 0));
            match r {
                Ok(y) => out[0] = m as f64 * z.powi(m as i32 - 1) * y.values[0] * jac,
                Err(e) => fail.record(e),
            }
        },
        0.0,
        1.0,
        1,
        &OUTER_QUAD,
    );
    fail.into_result()?;
    require_converged(&out, format!("IA z-integral on (T, ∞), tier {l}"), "coverage_ia_mrc")?;
    Ok(out)
}

fn coverage_tiered(net: &NetworkConfig, thresholds: &[f64], corr: Correlation) -> Result<CoverageEstimate> {
    check_ia(net)?;
    check_thresholds(net, thresholds)?;
    let mut terms = Vec::new();
    let mut err = 0.0;
    for (l, &t) in thresholds.iter().enumerate() {
        let m = net.tier(l).m_tx() as usize;
        let body = body_terms(net, l, t, 0, m - 1, corr, &OUTER_QUAD)?;
        let tail = tail_term(net, l, t)?;
        err += body.errors.iter().sum::<f64>() + tail.errors[0];
        terms.extend(body.values);
        terms.push(tail.values[0]);
    }
    let largest = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (value, _) = sum_terms(terms, "IA-MRC coverage");
    Ok(CoverageEstimate {
        value,
        abs_error: err,
        largest_term: largest,
    })
}

/// IA-MRC coverage with a separate threshold for each serving tier.
pub fn coverage_ia_mrc_tiered(net: &NetworkConfig, thresholds: &[f64]) -> Result<CoverageEstimate> {
    coverage_tiered(net, thresholds, Correlation::Exact)
}

/// Coverage probability of IA-MRC (N = 2, M_k ≤ 2) at threshold `t`.
pub fn coverage_ia_mrc(net: &NetworkConfig, t: f64) -> Result<f64> {
    check_threshold(t)?;
    Ok(coverage_ia_mrc_tiered(net, &vec![t; net.num_tiers()])?.value)
}

/// No-correlation model with per-tier thresholds.
pub fn coverage_ia_nocorr_tiered(net: &NetworkConfig, thresholds: &[f64]) -> Result<CoverageEstimate> {
    coverage_tiered(net, thresholds, Correlation::Independent)
}

/// IA-MRC coverage when the interference at the two antennas is taken as
/// independent: `1 + Ψ(a, b)` becomes `F(a) + F(b) − 1`.
pub fn coverage_ia_nocorr(net: &NetworkConfig, t: f64) -> Result<f64> {
    check_threshold(t)?;
    Ok(coverage_ia_nocorr_tiered(net, &vec![t; net.num_tiers()])?.value)
}

/// `1 − P_c` for IA-MRC. Small outages are summed directly from the orders
/// `m ≥ M_ℓ` (only z < T contributes to them); when that series converges
/// slowly the outage is large and `1 − P_c` is used.
pub fn outage_ia_mrc(net: &NetworkConfig, t: f64) -> Result<f64> {
    let p = coverage_ia_mrc(net, t)?;
    if p < 0.5 {
        return Ok(1.0 - p);
    }
    let mut terms = Vec::new();
    for l in 0..net.num_tiers() {
        let m = net.tier(l).m_tx() as usize;
        let out = body_terms(net, l, t, m, m + OUTAGE_ORDERS, Correlation::Exact, &TAIL_QUAD)?;
        let sum: f64 = out.values.iter().sum();
        if *out.values.last().expect("at least one order") > 1e-15 * sum {
            return Ok(1.0 - p);
        }
        terms.extend(out.values);
    }
    Ok(sum_terms(terms, "IA-MRC outage").0)
}

/// IA-MRC coverage without noise, one path-loss exponent and `M_k ≡ M`;
/// independent of densities and powers.
pub fn coverage_ia_simplified(alpha: f64, m_tx: u32, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    if !(1..=2).contains(&m_tx) {
        return Err(AnalyticError::Unsupported(format!("IA simplified needs M in {{1, 2}}, got {m_tx}")));
    }
    let m = m_tx as usize;
    let mut fail = FirstError::new();
    let body = integrate_vec(
        |z, out| {
            out.iter_mut().for_each(|v| *v = 0.0);
            if fail.is_set() {
                return;
            }
            let (a, b) = (t - z, z);
            match psi_reduced_coeffs(a, b, m_tx, alpha, m - 1, m, PSI_REL_TOL) {
                Ok(kap) => {
                    // 1/(1 + Ψ) in the scaled variables.
                    let mut s = Series2::zeros(m - 1, m);
                    for (i, row) in kap.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            s.set(i, j, if i + j == 0 { 1.0 + v } else { -v });
                        }
                    }
                    let r = s.recip();
                    for (mm, o) in out.iter_mut().enumerate() {
                        *o = m as f64 * a.powi(mm as i32) * b.powi(m as i32 - 1) * r.get(mm, m);
                    }
                }
                Err(e) => fail.record(AnalyticError::numerical(format!("IA simplified at z={z}"), e)),
            }
        },
        0.0,
        t,
        m,
        &OUTER_QUAD,
    );
    fail.into_result()?;
    require_converged(&body, "IA simplified z-integral", "coverage_ia_simplified")?;
    // On z > T the integral is the single-antenna coverage with Gamma(M) fading.
    let f = f_jets(alpha, m_tx, t, m - 1).map_err(|e| AnalyticError::numerical("IA simplified tail", e))?;
    let tail = recip_series(&f);
    Ok(sum_terms(body.values.into_iter().chain(tail), "IA simplified").0)
}

/// IA-MRC coverage with the mixed derivatives taken numerically by
/// Chebyshev tensor differentiation of the Laplace functional. Much slower
/// than [`coverage_ia_mrc`]; kept as an independent check.
pub fn coverage_ia_mrc_chebyshev(net: &NetworkConfig, t: f64) -> Result<CoverageEstimate> {
    check_ia(net)?;
    check_threshold(t)?;
    let mut terms = Vec::new();
    let mut err = 0.0;
    for l in 0..net.num_tiers() {
        let body = cheb_body(net, l, t)?;
        let tail = cheb_tail(net, l, t)?;
        err += body.errors.iter().sum::<f64>() + tail.errors[0];
        terms.extend(body.values);
        terms.push(tail.values[0]);
    }
    let largest = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (value, _) = sum_terms(terms, "IA-MRC (Chebyshev)");
    Ok(CoverageEstimate {
        value,
        abs_error: err,
        largest_term: largest,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn psi_plus_one(a: f64, b: f64, p: u32, q: f64) -> std::result::Result<f64, NumError> {
    if a == 0.0 && b == 0.0 {
        return Ok(1.0);
    }
    Ok(1.0 + psi_reduced_coeffs(a, b, p, q, 0, 0, 1e-12)?[0][0])
}

const CHEB_QUAD: QuadConfig = QuadConfig {
    abs_tol: 1e-9,
    rel_tol: 1e-8,
    max_intervals: 500,
};

fn cheb_body(net: &NetworkConfig, l: usize, t: f64) -> Result<QuadOutput> {
    let pc = PathLossCoupling::new(net, l)?;
    let tier = net.tier(l);
    let m = tier.m_tx() as usize;
    let m_l = m as f64;
    let lambda = tier.density;
    let noise = noise_term(net, l, m_l);
    let ps = ChebyshevDiffPlan::new(m - 1);
    let pt = ChebyshevDiffPlan::new(m);
    let mut fail = FirstError::new();
    let out = integrate_vec(
        |z, out| {
            out.iter_mut().for_each(|v| *v = 0.0);
            if fail.is_set() {
                return;
            }
            let (a, b) = (t - z, z);
            // grid[k][i][j] = 1 + Ψ(s_i a_k, t_j b_k, M_k, α_k)
            let mut grid = Vec::with_capacity(net.num_tiers());
            for tk in net.tiers() {
                let mh = tk.m_tx() as f64 / m_l;
                let mut g = vec![vec![0.0; pt.node_count()]; ps.node_count()];
                for (i, s) in ps.nodes().iter().enumerate() {
                    for (j, tt) in pt.nodes().iter().enumerate() {
                        match psi_plus_one(s * a / mh, tt * b / mh, tk.m_tx(), tk.path_loss_exp) {
                            Ok(v) => g[i][j] = v,
                            Err(e) => {
                                fail.record(AnalyticError::numerical(format!("Chebyshev grid, z={z}"), e));
                                return;
                            }
                        }
                    }
                }
                grid.push(g);
            }
            let weights: Vec<f64> = grid
                .iter()
                .map(|g| g.iter().flatten().fold(f64::INFINITY, |m, v| m.min(*v)))
                .collect();
            let y_max = pc.y_at_weighted_envelope(y_cutoff(2 * m), &weights);
            let y = integrate_vec(
                |y, yo| {
                    let c: Vec<f64> = (0..net.num_tiers()).map(|k| PI * pc.c(k, y)).collect();
                    let v = noise.map_or(0.0, |nz| nz.at(y));
                    let f = |s: f64, tt: f64| {
                        let i = ps.nodes().iter().position(|x| *x == s).expect("plan node");
                        let j = pt.nodes().iter().position(|x| *x == tt).expect("plan node");
                        let mut e = -v * (s * a + tt * b);
                        for (ck, g) in c.iter().zip(&grid) {
                            e -= ck * g[i][j];
                        }
                        Ok::<_, Infallible>(e.exp())
                    };
                    let d = mixed_cheb_derivatives(f, &ps, &pt).expect("infallible");
                    for (mm, o) in yo.iter_mut().enumerate() {
                        let sign = if (mm + m) % 2 == 0 { 1.0 } else { -1.0 };
                        *o = 2.0 * PI * lambda * y * sign * d[mm][m] / (factorial(mm) * factorial(m - 1) * z);
                    }
                },
                0.0,
                y_max,
                m,
                // Differentiation noise is divided by z; near z = 0 only an
                // absolute target scaled the same way is reachable.
                &QuadConfig::new(1e-12 / z, 1e-9),
            );
            if !y.converged {
                fail.record(AnalyticError::no_convergence(
                    format!("Chebyshev y-integral, z={z}"),
                    "coverage_ia_mrc_chebyshev",
                    y.evaluations,
                ));
                return;
            }
            out.copy_from_slice(&y.values);
        },
        0.0,
        t,
        m,
        &CHEB_QUAD,
    );
    fail.into_result()?;
    require_converged(&out, format!("Chebyshev z-integral, tier {l}"), "coverage_ia_mrc_chebyshev")?;
    Ok(out)
}

fn cheb_tail(net: &NetworkConfig, l: usize, t: f64) -> Result<QuadOutput> {
    let pc = PathLossCoupling::new(net, l)?;
    let tier = net.tier(l);
    let m = tier.m_tx() as usize;
    let m_l = m as f64;
    let lambda = tier.density;
    let noise = noise_term(net, l, m_l);
    let pt = ChebyshevDiffPlan::new(m);
    let kappa = tail_exponent(net);
    let mut fail = FirstError::new();
    let out = integrate_vec(
        |x, out| {
            out[0] = 0.0;
            if fail.is_set() || x == 0.0 {
                return;
            }
            let z = t * x.powf(-kappa);
            let jac = kappa * z / x;
            let mut grid = Vec::with_capacity(net.num_tiers());
            for tk in net.tiers() {
                let mh = tk.m_tx() as f64 / m_l;
                let mut g = Vec::with_capacity(pt.node_count());
                for tt in pt.nodes() {
                    match psi_plus_one(0.0, tt * z / mh, tk.m_tx(), tk.path_loss_exp) {
                        Ok(v) => g.push(v),
                        Err(e) => {
                            fail.record(AnalyticError::numerical(format!("Chebyshev tail grid, z={z}"), e));
                            return;
                        }
                    }
                }
                grid.push(g);
            }
            let weights: Vec<f64> = grid.iter().map(|g| g.iter().fold(f64::INFINITY, |m, v| m.min(*v))).collect();
            let y_max = pc.y_at_weighted_envelope(y_cutoff(2 * m), &weights);
            let y = integrate_vec(
                |y, yo| {
                    let c: Vec<f64> = (0..net.num_tiers()).map(|k| PI * pc.c(k, y)).collect();
                    let v = noise.map_or(0.0, |nz| nz.at(y));
                    let f = |tt: f64| {
                        let j = pt.nodes().iter().position(|x| *x == tt).expect("plan node");
                        let mut e = -v * tt * z;
                        for (ck, g) in c.iter().zip(&grid) {
                            e -= ck * g[j];
                        }
                        Ok::<_, Infallible>(e.exp())
                    };
                    let d = cheb_derivatives(f, &pt).expect("infallible");
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    yo[0] = 2.0 * PI * lambda * y * sign * d[m] / (factorial(m - 1) * z);
                },
                0.0,
                y_max,
                1,
                &QuadConfig::new(1e-13, 1e-9),
            );
            if !y.converged {
                fail.record(AnalyticError::no_convergence(
                    format!("Chebyshev tail y-integral, z={z}"),
                    "coverage_ia_mrc_chebyshev",
                    y.evaluations,
                ));
                return;
            }
            out[0] = y.values[0] * jac;
        },
        0.0,
        1.0,
        1,
        &CHEB_QUAD,
    );
    fail.into_result()?;
    require_converged(&out, format!("Chebyshev tail z-integral, tier {l}"), "coverage_ia_mrc_chebyshev")?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage_ib_mrc;
    use hetdiv_hetnet::{presets, OstbcCode};

    #[test]
    fn tail_is_single_antenna_coverage() {
        // Summed over serving tiers, the z > T part is P(X_2 ≥ T): the N = 1 IB coverage.
        let net = presets::table2(2, Some(-104.0)).with_code(&OstbcCode::alamouti());
        let total: f64 = (0..3).map(|l| tail_term(&net, l, 1.5).unwrap().values[0]).sum();
        let ib = coverage_ib_mrc(&net.with_rx_antennas(1).unwrap(), 1.5).unwrap();
        assert!((total - ib).abs() < 1e-8, "{total} vs {ib}");
    }

    #[test]
    fn constraints() {
        let net = presets::table2(2, None);
        assert!(matches!(coverage_ia_mrc(&net, 1.0), Err(AnalyticError::Unsupported(_))));
        let n4 = presets::equal_alpha(3.7, OstbcCode::siso(), 4);
        assert!(coverage_ia_nocorr(&n4, 1.0).is_err());
        assert!(coverage_ia_simplified(3.7, 4, 1.0).is_err());
    }
}
