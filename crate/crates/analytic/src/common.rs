//! Helpers shared by the coverage evaluators.

use crate::{AnalyticError, Result};
use hetdiv_core::quad::{QuadConfig, QuadOutput};
use hetdiv_core::sum::KahanSum;
use hetdiv_hetnet::{NetworkConfig, PathLossCoupling};

/// Envelope level beyond which the y-integrand is dropped, plus a margin per
/// series order (higher coefficients peak further out).
pub(crate) fn y_cutoff(order: usize) -> f64 {
    60.0 + 3.0 * order as f64
}

/// Inner (y) integrals.
pub(crate) const Y_QUAD: QuadConfig = QuadConfig {
    abs_tol: 1e-13,
    rel_tol: 1e-10,
    max_intervals: 4000,
};

/// Outer integrals of coverage values.
pub(crate) const OUTER_QUAD: QuadConfig = QuadConfig {
    abs_tol: 1e-10,
    rel_tol: 1e-9,
    max_intervals: 2000,
};

/// Integrals of quantities that may be tiny (outage sums): relative only.
pub(crate) const TAIL_QUAD: QuadConfig = QuadConfig {
    abs_tol: 0.0,
    rel_tol: 1e-9,
    max_intervals: 4000,
};

/// Break points for a y-integral: the integrand lives mostly inside the
/// radius where the weighted envelope (the order-zero exponent) reaches the
/// cutoff, while the sum over all orders is exp(−π Σ c_k) and only fades at
/// the plain-envelope radius.
pub(crate) fn y_breaks(pc: &PathLossCoupling, order: usize, weights: &[f64]) -> Vec<f64> {
    let level = y_cutoff(order);
    let inner = pc.y_at_weighted_envelope(level, weights);
    let outer = pc.y_at_envelope(level);
    if outer > inner * (1.0 + 1e-9) {
        vec![0.0, inner, outer]
    } else {
        vec![0.0, inner]
    }
}

pub(crate) const PSI_REL_TOL: f64 = 1e-11;

pub(crate) fn check_threshold(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(AnalyticError::Invalid(format!("threshold must be positive and finite, got {t}")));
    }
    Ok(())
}

pub(crate) fn check_thresholds(net: &NetworkConfig, t: &[f64]) -> Result<()> {
    if t.len() != net.num_tiers() {
        return Err(AnalyticError::Invalid(format!(
            "{} per-tier thresholds for {} tiers",
            t.len(),
            net.num_tiers()
        )));
    }
    t.iter().try_for_each(|&x| check_threshold(x))
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 2.0 && alpha.is_finite()) {
        return Err(AnalyticError::Invalid(format!("path-loss exponent must exceed 2, got {alpha}")));
    }
    Ok(())
}

/// `scale / SNR_ℓ(y)` as a function of y.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NoiseTerm {
    k: f64,
    alpha: f64,
}

impl NoiseTerm {
    pub(crate) fn at(&self, y: f64) -> f64 {
        self.k * y.powf(self.alpha)
    }
}

/// `None` in the interference-limited case, where the term is dropped.
pub(crate) fn noise_term(net: &NetworkConfig, l: usize, scale: f64) -> Option<NoiseTerm> {
    if net.is_interference_limited() {
        return None;
    }
    let tier = net.tier(l);
    Some(NoiseTerm {
        k: scale * net.noise_power() / tier.power,
        alpha: tier.path_loss_exp,
    })
}

/// Holds the first error raised inside an integrand that cannot return one.
pub(crate) struct FirstError(Option<AnalyticError>);

impl FirstError {
    pub(crate) fn new() -> Self {
        Self(None)
    }

    pub(crate) fn record(&mut self, e: AnalyticError) {
        if self.0.is_none() {
            self.0 = Some(e);
        }
    }

    pub(crate) fn is_set(&self) -> bool {
        self.0.is_some()
    }

    pub(crate) fn into_result(self) -> Result<()> {
        match self.0 {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

pub(crate) fn require_converged(out: &QuadOutput, context: impl Into<String>, func: &'static str) -> Result<()> {
    if out.converged {
        Ok(())
    } else {
        Err(AnalyticError::no_convergence(context, func, out.evaluations))
    }
}

/// Compensated sum of per-order terms; warns when cancellation eats more
/// than six digits.
pub(crate) fn sum_terms(terms: impl IntoIterator<Item = f64>, what: &str) -> (f64, f64) {
    let mut k = KahanSum::new();
    let mut largest = 0.0f64;
    for t in terms {
        largest = largest.max(t.abs());
        k.add(t);
    }
    let lost = k.digits_lost();
    if lost > 6.0 {
        log::warn!("{what}: alternating sum lost {lost:.1} digits (largest term {largest:e})");
    }
    (k.value(), largest)
}
