use crate::combine::{combine_ia, combine_ib, combine_sc, IaMode};
use crate::field::{cn01_vec, sample_conditional_field, sample_interference};
use crate::moments::{moment_terms, summarize, MomentReport, MomentTerms};
use crate::stats::wilson_se;
use crate::{sample_geometry, InterferenceEstimate, Result, SimConfig, SimError, SimScheme};
use hetdiv_hetnet::rate_adjusted_threshold;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use std::io::Write;

/// RNG of iteration `i`: stream `i` of the ChaCha generator keyed by `seed`.
pub fn iteration_rng(seed: u64, i: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// What one iteration saw.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationSample {
    pub iteration: u64,
    pub serving_tier: usize,
    pub serving_distance: f64,
    /// Per-antenna interference power `I_n` (W), averaged over the user's codeword.
    pub per_antenna_interference: Vec<f64>,
    /// `N × M_ℓ` serving channel, row-major.
    pub desired_channel: Vec<Complex64>,
    pub sinr_by_scheme: Vec<(SimScheme, f64)>,
    pub resamples: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimPoint {
    pub threshold: f64,
    pub covered: u64,
    pub coverage: f64,
    /// One-sigma Wilson half-width.
    pub wilson_se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimCurve {
    pub scheme: SimScheme,
    pub points: Vec<SimPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub iterations: u64,
    pub curves: Vec<SimCurve>,
    /// Interference moments; `None` when fewer than two iterations ran.
    pub moments: Option<MomentReport>,
    /// Drops discarded because no tier had a base station.
    pub resamples: u64,
    pub samples: Option<Vec<IterationSample>>,
}

impl SimResult {
    pub fn curve(&self, scheme: SimScheme) -> Option<&SimCurve> {
        self.curves.iter().find(|c| c.scheme == scheme)
    }
}

fn simulate_iteration(cfg: &SimConfig, i: u64) -> Result<(IterationSample, MomentTerms)> {
    let net = &cfg.net;
    let mut rng = iteration_rng(cfg.rng_seed, i);
    let geom = sample_geometry(net, cfg.mean_bs_per_tier, &mut rng)?;
    let field = sample_interference(&geom, net, &mut rng);
    let serving = net.tier(geom.serving_tier);
    let n_rx = net.rx_antennas() as usize;
    let h_o = cn01_vec(&mut rng, n_rx * serving.m_tx() as usize);
    let window = serving.code.codeword_len() as usize;
    let i_true = field.per_antenna(net, window);
    let i_est = match cfg.estimation {
        InterferenceEstimate::Genie => i_true.clone(),
        InterferenceEstimate::Averaged => field.estimate_averaged(net, cfg.resources_per_frame as usize, &mut rng),
    };
    // Independent fields for the moment estimate and the no-correlation
    // receiver: antenna n ≥ 1 uses fresh field n − 1.
    let extra = if cfg.combining.contains(&SimScheme::IaNc) { n_rx.max(2) - 1 } else { 1 };
    let fresh: Vec<_> = (0..extra)
        .map(|_| sample_conditional_field(&geom, net, cfg.mean_bs_per_tier, &mut rng))
        .collect();
    let mut sinr = Vec::with_capacity(cfg.combining.len());
    for &s in &cfg.combining {
        let v = match s {
            SimScheme::IbMrc => combine_ib(net, &geom, &h_o, &field),
            SimScheme::IaMrcExact => combine_ia(net, &geom, &h_o, &field, &i_est, IaMode::Exact),
            SimScheme::IaMrcSimplified => combine_ia(net, &geom, &h_o, &field, &i_true, IaMode::Simplified),
            SimScheme::Sc => combine_sc(net, &geom, &h_o, &i_true)?,
            SimScheme::IaNc => {
                let i_nc: Vec<f64> = (0..n_rx)
                    .map(|n| if n == 0 { i_true[0] } else { fresh[n - 1].per_antenna(net, window)[n] })
                    .collect();
                combine_ia(net, &geom, &h_o, &field, &i_nc, IaMode::Simplified)
            }
            SimScheme::IaFc => combine_ia(net, &geom, &h_o, &field, &vec![i_true[0]; n_rx], IaMode::Simplified),
        };
        sinr.push((s, v));
    }
    let terms = moment_terms(net, &geom, &field, &fresh[0]);
    let sample = IterationSample {
        iteration: i,
        serving_tier: geom.serving_tier,
        serving_distance: geom.y,
        per_antenna_interference: i_true,
        desired_channel: h_o,
        sinr_by_scheme: sinr,
        resamples: geom.resamples,
    };
    Ok((sample, terms))
}

/// Runs the simulation. The output depends only on `cfg`, not on the
/// number of threads.
pub fn run(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let outcomes: Vec<(IterationSample, MomentTerms)> = (0..cfg.iterations)
        .into_par_iter()
        .map(|i| simulate_iteration(cfg, i))
        .collect::<Result<_>>()?;
    // Per serving tier thresholds.
    let tier_thresholds: Vec<Vec<f64>> = cfg
        .net
        .tiers()
        .iter()
        .map(|t| {
            cfg.thresholds
                .iter()
                .map(|&x| if cfg.apply_rate_loss { rate_adjusted_threshold(x, &t.code) } else { x })
                .collect()
        })
        .collect();
    let mut counts = vec![vec![0u64; cfg.thresholds.len()]; cfg.combining.len()];
    for (s, _) in &outcomes {
        let ts = &tier_thresholds[s.serving_tier];
        for (c, (_, v)) in counts.iter_mut().zip(&s.sinr_by_scheme) {
            for (k, t) in c.iter_mut().zip(ts) {
                if v >= t {
                    *k += 1;
                }
            }
        }
    }
    let n = cfg.iterations;
    let curves = cfg
        .combining
        .iter()
        .zip(counts)
        .map(|(&scheme, c)| SimCurve {
            scheme,
            points: cfg
                .thresholds
                .iter()
                .zip(c)
                .map(|(&threshold, covered)| SimPoint {
                    threshold,
                    covered,
                    coverage: covered as f64 / n as f64,
                    wilson_se: wilson_se(covered, n),
                })
                .collect(),
        })
        .collect();
    let terms: Vec<MomentTerms> = outcomes.iter().map(|(_, t)| *t).collect();
    let resamples = outcomes.iter().map(|(s, _)| s.resamples as u64).sum();
    Ok(SimResult {
        iterations: n,
        curves,
        moments: (n >= 2).then(|| summarize(&terms)),
        resamples,
        samples: cfg.keep_samples.then(|| outcomes.into_iter().map(|(s, _)| s).collect()),
    })
}

/// Raw samples as CSV: `iteration,serving_tier,y,I_1..I_N,scheme,sinr`, one
/// row per iteration and scheme.
pub fn write_samples_csv<W: Write>(samples: &[IterationSample], out: W) -> Result<()> {
    let io = |e: csv::Error| SimError::Io(e.to_string());
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let n_rx = samples.first().map_or(0, |s| s.per_antenna_interference.len());
    let mut header = vec!["iteration".to_string(), "serving_tier".into(), "y".into()];
    header.extend((1..=n_rx).map(|n| format!("I_{n}")));
    header.extend(["scheme".to_string(), "sinr".into()]);
    w.write_record(&header).map_err(io)?;
    for s in samples {
        for (scheme, v) in &s.sinr_by_scheme {
            let mut row = vec![s.iteration.to_string(), s.serving_tier.to_string(), format!("{:.16e}", s.serving_distance)];
            row.extend(s.per_antenna_interference.iter().map(|x| format!("{x:.16e}")));
            row.push(scheme.name().to_string());
            row.push(format!("{v:.16e}"));
            w.write_record(&row).map_err(io)?;
        }
    }
    w.flush().map_err(|e| SimError::Io(e.to_string()))
}
