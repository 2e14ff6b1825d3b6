//! Dual-antenna MRC gain over single-antenna transmission (σ² = 0, one α,
//! M = 1). Each coverage splits as `1/₂F₁(−2/α,1;1−2/α;−T) + G`.

use crate::common::{check_alpha, check_threshold, require_converged, FirstError, OUTER_QUAD};
use crate::{AnalyticError, Result};
use hetdiv_core::quad::{integrate_vec_breaks, QuadConfig};
use hetdiv_core::specfun::{hyp2f1, hyp2f1_deriv, psi_closed_p1, psi_reduced_coeffs, HyperGeomArgs};

fn f1(alpha: f64, x: f64) -> Result<f64> {
    hyp2f1(HyperGeomArgs::family(alpha, 1.0, x)).map_err(|e| AnalyticError::numerical("gain", e))
}

/// Single-antenna coverage `1/₂F₁(−2/α, 1; 1−2/α; −T)`.
pub fn coverage_siso_simplified(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    Ok(1.0 / f1(alpha, t)?)
}

/// `G^IB(α, T) = (d/ds ₂F₁(−2/α,1;1−2/α;−sT) at s = 1) / ₂F₁(…;−T)²`.
pub fn gain_ib(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    let args = HyperGeomArgs::family(alpha, 1.0, t);
    let d = hyp2f1_deriv(args, 1, t).map_err(|e| AnalyticError::numerical("gain_ib", e))?;
    let f = f1(alpha, t)?;
    Ok(d / (f * f))
}

const GAIN_QUAD: QuadConfig = QuadConfig {
    abs_tol: 1e-12,
    ..OUTER_QUAD
};

/// `G^IA(α, T) = ∫₀^T ∂_b A(T−z, b)|_{b=z} / A(T−z, z)² dz` with
/// `A = 1 + Ψ(·, ·, 1, α)`; the derivative comes from the Ψ integral and A
/// from its closed form.
pub fn gain_ia(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    let mut fail = FirstError::new();
    let out = integrate_vec_breaks(
        |z, out| {
            out[0] = 0.0;
            if fail.is_set() {
                return;
            }
            let a = t - z;
            let r = psi_reduced_coeffs(a, z, 1, alpha, 0, 1, 1e-12)
                .and_then(|k| Ok((k[0][1], psi_closed_p1(a, z, alpha)?)));
            match r {
                Ok((d, aa)) => out[0] = d / (aa * aa),
                Err(e) => fail.record(AnalyticError::numerical(format!("gain_ia at z={z}"), e)),
            }
        },
        &[0.0, 0.5 * t, t],
        1,
        &GAIN_QUAD,
    );
    fail.into_result()?;
    require_converged(&out, "gain_ia", "gain_ia")?;
    Ok(out.values[0])
}

/// [`gain_ia`] through its explicit integrand in ₂F₁(1, −2/α; 1−2/α; ·).
/// Numerator and denominator both vanish at z = T/2, where the integral is
/// split.
pub fn gain_ia_explicit(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_threshold(t)?;
    let mut fail = FirstError::new();
    let out = integrate_vec_breaks(
        |z, out| {
            out[0] = 0.0;
            if fail.is_set() {
                return;
            }
            match (f1(alpha, z), f1(alpha, t - z)) {
                (Ok(fz), Ok(ftz)) => {
                    let num = (2.0 * t - 4.0 * z) / (z + 1.0)
                        - ((t * (2.0 + alpha) - z * (4.0 + alpha)) * fz + alpha * (z - t) * ftz);
                    let den = z * fz + (z - t) * ftz;
                    out[0] = num / (alpha * den * den);
                }
                (Err(e), _) | (_, Err(e)) => fail.record(e),
            }
        },
        &[0.0, 0.5 * t, t],
        1,
        &GAIN_QUAD,
    );
    fail.into_result()?;
    require_converged(&out, "gain_ia_explicit", "gain_ia_explicit")?;
    Ok(out.values[0])
}
