//! Association, serving distance and second-order interference statistics.

use crate::{HetNetError, NetworkConfig, OstbcCode, PathLossCoupling, Result, ServingContext};
use hetdiv_core::quad::{integrate, QuadConfig};
use hetdiv_core::NumError;
use std::f64::consts::PI;

// The y-integrand decays like exp(−envelope); past this envelope the
// remaining mass is below 1e-26.
const ENVELOPE_CUTOFF: f64 = 60.0;

fn quad_cfg() -> QuadConfig {
    QuadConfig::new(0.0, 1e-13)
}

/// Probability that the typical user is served by tier `l`.
pub fn association_probability(net: &NetworkConfig, l: usize) -> Result<f64> {
    let pc = PathLossCoupling::new(net, l)?;
    let lambda = net.tier(l).density;
    let y_max = pc.y_at_envelope(ENVELOPE_CUTOFF);
    let r = integrate(|y| 2.0 * PI * lambda * y * (-pc.envelope(y)).exp(), 0.0, y_max, &quad_cfg());
    if !r.converged {
        return Err(HetNetError::Numerical(NumError::NoConvergence {
            func: "association_probability",
            args: format!("tier {l}"),
            iterations: r.evaluations,
        }));
    }
    Ok(r.value)
}

/// Association probabilities of all tiers.
pub fn association_probabilities(net: &NetworkConfig) -> Result<Vec<f64>> {
    (0..net.num_tiers()).map(|l| association_probability(net, l)).collect()
}

/// Density of the serving distance given association with tier `l`.
pub fn serving_distance_pdf(net: &NetworkConfig, l: usize, y: f64) -> Result<f64> {
    if y < 0.0 {
        return Err(HetNetError::Config(format!("distance must be >= 0, got {y}")));
    }
    if y == 0.0 {
        net.check_tier(l)?;
        return Ok(0.0);
    }
    let a = association_probability(net, l)?;
    let pc = PathLossCoupling::new(net, l)?;
    Ok(2.0 * PI * net.tier(l).density * y * (-pc.envelope(y)).exp() / a)
}

fn per_tier_moment(net: &NetworkConfig, ctx: &ServingContext, fading: impl Fn(u32) -> f64) -> f64 {
    let y = ctx.distance;
    if y == 0.0 {
        return 0.0;
    }
    net.tiers()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let a = t.path_loss_exp;
            t.density * ctx.rel_power[k].powf(2.0 / a) / (a - 1.0)
                * fading(t.s_active())
                * y.powf(2.0 / ctx.rel_alpha[k])
        })
        .sum::<f64>()
        * PI
}

/// Variance of the normalized per-antenna interference given (ℓ, y).
pub fn interference_variance_conditional(net: &NetworkConfig, ctx: &ServingContext) -> f64 {
    per_tier_moment(net, ctx, |s| 1.0 + 1.0 / s as f64)
}

/// Covariance of the normalized interference at two receive antennas given (ℓ, y).
pub fn interference_covariance_conditional(net: &NetworkConfig, ctx: &ServingContext) -> f64 {
    per_tier_moment(net, ctx, |_| 1.0)
}

/// Unconditional variance `(1 + 1/S)/(α − 1)` for equal α and S across tiers.
pub fn interference_variance(alpha: f64, s_active: u32) -> Result<f64> {
    if !(alpha > 2.0) {
        return Err(HetNetError::Config(format!("path-loss exponent must exceed 2, got {alpha}")));
    }
    if s_active == 0 {
        return Err(HetNetError::Config("s_active must be at least 1".into()));
    }
    Ok((1.0 + 1.0 / s_active as f64) / (alpha - 1.0))
}

/// Correlation coefficient `S/(1+S)` between two receive antennas.
pub fn interference_correlation(s_active: u32) -> f64 {
    let s = s_active as f64;
    s / (1.0 + s)
}

/// Threshold that keeps the information rate fixed under code rate `r`:
/// `(1 + t)^{1/r} − 1`.
pub fn rate_adjusted_threshold(t: f64, code: &OstbcCode) -> f64 {
    if code.rate() == 1.0 {
        t
    } else {
        (t.ln_1p() / code.rate()).exp_m1()
    }
}
