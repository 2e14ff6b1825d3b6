//! Post-combiner SINR of the receivers.
//!
//! The received block of the user's codeword is treated as a real vector,
//! `ρ = √p_o G_o x + Σ_i √p_i G_i x_i + w`, where `x` stacks real and
//! imaginary parts of the symbols. Weighting antenna n by `w_n` and matched
//! filtering with `G_o` keeps the symbols orthogonal (the code is orthogonal
//! per receive antenna), so the SINR of symbol 0 is
//! `p_o A² / (Σ_i p_i ‖G_iᵀ W g‖² + σ² ‖W g‖²)`, averaged over its real
//! and imaginary parts.

use crate::{Geometry, InterferenceField, Result, SimError};
use hetdiv_hetnet::{CodeEntry, NetworkConfig, OstbcCode};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IaMode {
    /// Exact SINR of the weighted combiner, cross-antenna phase terms included.
    Exact,
    /// `P/(S y^α) Σ_n ‖h_{o,n}‖² / (I_n + σ²)`.
    Simplified,
}

/// Signal power per active antenna of the serving BS, `P_ℓ / (S_ℓ y^{α_ℓ})`.
fn serving_power(net: &NetworkConfig, geom: &Geometry) -> f64 {
    let t = net.tier(geom.serving_tier);
    t.power / (t.s_active() as f64 * geom.y.powf(t.path_loss_exp))
}

fn row_norms(h_o: &[Complex64], n_rx: usize) -> Vec<f64> {
    let m = h_o.len() / n_rx;
    (0..n_rx)
        .map(|n| h_o[n * m..(n + 1) * m].iter().map(|h| h.norm_sqr()).sum())
        .collect()
}

/// Codeword entry at `(slot, antenna)`; codes without a matrix get an
/// independent symbol per active entry.
fn entry(code: &OstbcCode, slot: usize, m: usize) -> Option<CodeEntry> {
    match code.matrix() {
        Some(mx) => mx[slot][m],
        None => code.activation_pattern()[slot][m].then_some(CodeEntry {
            symbol: slot * code.m_tx() as usize + m,
            conj: false,
            sign: 1.0,
        }),
    }
}

fn symbols_per_codeword(code: &OstbcCode) -> usize {
    match code.matrix() {
        Some(_) => code.symbols(),
        None => (code.codeword_len() * code.m_tx()) as usize,
    }
}

/// Codeword-level SINR of symbol 0 with antenna weights `w`.
fn weighted_sinr(net: &NetworkConfig, geom: &Geometry, h_o: &[Complex64], field: &InterferenceField, w: &[f64]) -> f64 {
    let n_rx = field.n_rx;
    let code = &net.tier(geom.serving_tier).code;
    let mx = code.matrix().expect("caller checks for a codeword matrix");
    let m_o = code.m_tx() as usize;
    let len = mx.len();
    // Weighted matched-filter vectors over (n, τ) for Re and Im of symbol 0.
    let mut v_re = vec![Complex64::new(0.0, 0.0); n_rx * len];
    let mut v_im = v_re.clone();
    let mut a = [0.0; 2];
    for n in 0..n_rx {
        for (tau, row) in mx.iter().enumerate() {
            let (mut g_re, mut g_im) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for (m, e) in row.iter().enumerate() {
                if let Some(e) = e.filter(|e| e.symbol == 0) {
                    let h = h_o[n * m_o + m] * e.sign;
                    g_re += h;
                    g_im += if e.conj { h * Complex64::new(0.0, -1.0) } else { h * Complex64::i() };
                }
            }
            v_re[n * len + tau] = g_re * w[n];
            v_im[n * len + tau] = g_im * w[n];
            a[0] += w[n] * g_re.norm_sqr();
            a[1] += w[n] * g_im.norm_sqr();
        }
    }
    let noise = net.noise_power();
    let v_norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let mut den = noise * (v_norm(&v_re) + v_norm(&v_im));
    let mut acc: Vec<(f64, f64)> = Vec::new();
    for it in &field.interferers {
        let ic = &net.tier(it.tier).code;
        let (l_k, m_k, q_k) = (ic.codeword_len() as usize, ic.m_tx() as usize, symbols_per_codeword(ic));
        let words = (it.offset + len - 1) / l_k + 1;
        let mut total = 0.0;
        for v in [&v_re, &v_im] {
            acc.clear();
            acc.resize(words * q_k, (0.0, 0.0));
            for tau in 0..len {
                let s = it.offset + tau;
                let (word, slot) = (s / l_k, s % l_k);
                for m in 0..m_k {
                    let Some(e) = entry(ic, slot, m) else { continue };
                    let p = word * q_k + e.symbol;
                    for n in 0..n_rx {
                        let z = v[n * len + tau].conj() * it.h[n * m_k + m] * e.sign;
                        acc[p].0 += z.re;
                        acc[p].1 += if e.conj { z.im } else { -z.im };
                    }
                }
            }
            total += acc.iter().map(|(x, y)| x * x + y * y).sum::<f64>();
        }
        den += it.power * total;
    }
    let num = serving_power(net, geom) * (a[0] * a[0] + a[1] * a[1]);
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// Equivalent-channel SINR:
/// each interferer contributes `p_i Σ_{m active} |uᴴ h_{i,m}|²` with `u`
/// the direction of the first desired column.
fn equivalent_sinr(net: &NetworkConfig, geom: &Geometry, h_o: &[Complex64], field: &InterferenceField) -> f64 {
    let n_rx = field.n_rx;
    let m_o = h_o.len() / n_rx;
    let col: Vec<Complex64> = (0..n_rx).map(|n| h_o[n * m_o]).collect();
    let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let u: Vec<Complex64> = if norm > 0.0 {
        col.iter().map(|c| c / norm).collect()
    } else {
        (0..n_rx).map(|n| Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0)).collect()
    };
    let mut i_tot = 0.0;
    for it in &field.interferers {
        let code = &net.tier(it.tier).code;
        let m_k = code.m_tx() as usize;
        let active = &code.activation_pattern()[it.offset % code.codeword_len() as usize];
        for m in (0..m_k).filter(|&m| active[m]) {
            let proj: Complex64 = (0..n_rx).map(|n| u[n].conj() * it.h[n * m_k + m]).sum();
            i_tot += it.power * proj.norm_sqr();
        }
    }
    let g: f64 = h_o.iter().map(|h| h.norm_sqr()).sum();
    serving_power(net, geom) * g / (i_tot + net.noise_power())
}

/// Codeword-level decoding is simulated for serving codes with at most two
/// transmit antennas; larger codes use the equivalent channel.
fn codeword_level(net: &NetworkConfig, geom: &Geometry) -> bool {
    let code = &net.tier(geom.serving_tier).code;
    code.matrix().is_some() && code.m_tx() <= 2
}

/// Interference-blind MRC: plain OSTBC decoding summed over antennas.
pub fn combine_ib(net: &NetworkConfig, geom: &Geometry, h_o: &[Complex64], field: &InterferenceField) -> f64 {
    if codeword_level(net, geom) {
        weighted_sinr(net, geom, h_o, field, &vec![1.0; field.n_rx])
    } else {
        equivalent_sinr(net, geom, h_o, field)
    }
}

/// Interference-aware MRC with per-antenna weights `1/(I_n + σ²)`, where
/// `interference` holds the receiver's knowledge of `I_n`.
pub fn combine_ia(
    net: &NetworkConfig,
    geom: &Geometry,
    h_o: &[Complex64],
    field: &InterferenceField,
    interference: &[f64],
    mode: IaMode,
) -> f64 {
    let noise = net.noise_power();
    match mode {
        IaMode::Exact if codeword_level(net, geom) => {
            let w: Vec<f64> = interference.iter().map(|i| 1.0 / (i + noise)).collect();
            if w.iter().any(|x| !x.is_finite()) {
                // No interference and no noise on some antenna.
                return f64::INFINITY;
            }
            weighted_sinr(net, geom, h_o, field, &w)
        }
        _ => {
            let rows = row_norms(h_o, field.n_rx);
            serving_power(net, geom) * rows.iter().zip(interference).map(|(g, i)| g / (i + noise)).sum::<f64>()
        }
    }
}

/// Selection combining: best per-antenna SINR. Needs `M_k = 1` everywhere.
pub fn combine_sc(net: &NetworkConfig, geom: &Geometry, h_o: &[Complex64], interference: &[f64]) -> Result<f64> {
    if net.tiers().iter().any(|t| t.m_tx() != 1) {
        return Err(SimError::Unsupported("SC needs single-antenna transmitters in every tier".into()));
    }
    let p = serving_power(net, geom);
    Ok(h_o
        .iter()
        .zip(interference)
        .map(|(h, i)| p * h.norm_sqr() / (i + net.noise_power()))
        .fold(0.0, f64::max))
}
