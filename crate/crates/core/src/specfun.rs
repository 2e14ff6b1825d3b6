//! Special functions for the coverage formulas.
//!
//! The hypergeometric family that appears everywhere is
//! `F_{α,S}(x) = ₂F₁(−2/α, S; 1−2/α; −x)` for `x ≥ 0`, together with its
//! derivatives and the two-argument generalisation Ψ.

use crate::quad::{integrate_vec, QuadConfig};
use crate::NumError;
use statrs::function::gamma::{gamma, ln_gamma};

const SERIES_BUDGET: usize = 20_000;
const FALLBACK_BUDGET: usize = 2_000_000;

/// Arguments of `₂F₁(a, b; c; x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperGeomArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
}

impl HyperGeomArgs {
    pub fn new(a: f64, b: f64, c: f64, x: f64) -> Self {
        Self { a, b, c, x }
    }

    /// `₂F₁(−2/α, b; 1−2/α; −scale)`.
    pub fn family(alpha: f64, b: f64, scale: f64) -> Self {
        let d = 2.0 / alpha;
        Self::new(-d, b, 1.0 - d, -scale)
    }

    fn shifted(&self, m: usize, x: f64) -> Self {
        let m = m as f64;
        Self::new(self.a + m, self.b + m, self.c + m, x)
    }

    fn describe(&self) -> String {
        format!("a={}, b={}, c={}, x={}", self.a, self.b, self.c, self.x)
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// Rising factorial `(x)_n = x (x+1) … (x+n−1)`.
pub fn rising(x: f64, n: usize) -> f64 {
    (0..n).map(|k| x + k as f64).product()
}

fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// Gauss series. Stops once two consecutive terms fall below 1e-17 of the sum.
fn gauss_series(a: f64, b: f64, c: f64, z: f64, budget: usize) -> Option<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut small = 0;
    for n in 0..budget {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
        if term == 0.0 {
            return Some(sum + comp);
        }
        if term.abs() <= 1e-17 * (sum + comp).abs() {
            small += 1;
            if small >= 2 {
                return Some(sum + comp);
            }
        } else {
            small = 0;
        }
        if !term.is_finite() {
            return None;
        }
    }
    None
}

fn pfaff(args: &HyperGeomArgs, budget: usize) -> Option<f64> {
    let HyperGeomArgs { a, b, c, x } = *args;
    let z = x / (x - 1.0);
    gauss_series(c - a, b, c, z, budget).map(|s| (1.0 - x).powf(-b) * s)
}

/// Connection formula in w = 1/(1−x), valid when b − a is not an integer.
fn connection(args: &HyperGeomArgs) -> Option<f64> {
    let HyperGeomArgs { a, b, c, x } = *args;
    let w = 1.0 / (1.0 - x);
    let g_c = gamma(c);
    let s1 = gauss_series(a, c - b, a - b + 1.0, w, SERIES_BUDGET)?;
    let s2 = gauss_series(b, c - a, b - a + 1.0, w, SERIES_BUDGET)?;
    let k1 = g_c * gamma(b - a) * recip_gamma(b) * recip_gamma(c - a);
    let k2 = g_c * gamma(a - b) * recip_gamma(a) * recip_gamma(c - b);
    let t1 = if k1 == 0.0 { 0.0 } else { k1 * w.powf(a) * s1 };
    let t2 = if k2 == 0.0 { 0.0 } else { k2 * w.powf(b) * s2 };
    let v = t1 + t2;
    v.is_finite().then_some(v)
}

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` for `x ≤ 0`.
///
/// Relative accuracy is about 1e-13 for the parameter family used in the
/// coverage formulas and `|x| ≤ 1e4`.
pub fn hyp2f1(args: HyperGeomArgs) -> Result<f64, NumError> {
    let HyperGeomArgs { a, b, c, x } = args;
    if [a, b, c, x].iter().any(|v| !v.is_finite()) {
        return Err(NumError::domain("hyp2f1", format!("non-finite argument: {}", args.describe())));
    }
    if is_nonpositive_integer(c) {
        return Err(NumError::domain("hyp2f1", format!("c = {c} is a non-positive integer")));
    }
    if x > 0.0 {
        return Err(NumError::domain("hyp2f1", format!("x = {x} > 0 is not supported")));
    }
    if x == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let no_conv = |iterations| NumError::NoConvergence {
        func: "hyp2f1",
        args: args.describe(),
        iterations,
    };
    if x >= -1.5 {
        return pfaff(&args, SERIES_BUDGET).ok_or_else(|| no_conv(SERIES_BUDGET));
    }
    let d = b - a;
    if (d - d.round()).abs() > 1e-6 {
        if let Some(v) = connection(&args) {
            return Ok(v);
        }
    }
    pfaff(&args, FALLBACK_BUDGET).ok_or_else(|| no_conv(FALLBACK_BUDGET))
}

/// `d^m/ds^m ₂F₁(a, b; c; −s·scale)` at `s = 1`.
///
/// `args.x` is ignored in favour of `−scale`; `m = 0` is exactly
/// [`hyp2f1`].
pub fn hyp2f1_deriv(args: HyperGeomArgs, m: usize, scale: f64) -> Result<f64, NumError> {
    let base = HyperGeomArgs { x: -scale, ..args };
    if m == 0 {
        return hyp2f1(base);
    }
    let k = (-scale).powi(m as i32) * rising(args.a, m) * rising(args.b, m) / rising(args.c, m);
    Ok(k * hyp2f1(base.shifted(m, -scale))?)
}

/// Coefficients of `σ^j`, `j = 0..=order`, in `₂F₁(a, b; c; −scale·(1−σ))`.
///
/// For the family with `a < 0 < b, c` every coefficient with `j ≥ 1` is
/// negative.
pub fn hyp2f1_sigma_coeffs(args: HyperGeomArgs, scale: f64, order: usize) -> Result<Vec<f64>, NumError> {
    let mut out = Vec::with_capacity(order + 1);
    let base = HyperGeomArgs { x: -scale, ..args };
    out.push(hyp2f1(base)?);
    let mut k = 1.0;
    for j in 1..=order {
        let jf = (j - 1) as f64;
        k *= scale * (args.a + jf) * (args.b + jf) / ((args.c + jf) * j as f64);
        if k == 0.0 {
            out.push(0.0);
            continue;
        }
        out.push(k * hyp2f1(base.shifted(j, -scale))?);
    }
    Ok(out)
}

/// Complementary CDF of the Erlang(shape, 1) distribution at `theta`.
pub fn erlang_ccdf(shape: u32, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 1.0;
    }
    let ln_t = theta.ln();
    let mut s = 0.0;
    let mut ln_fact = 0.0;
    for j in 0..shape {
        if j > 0 {
            ln_fact += (j as f64).ln();
        }
        s += (-theta + j as f64 * ln_t - ln_fact).exp();
    }
    s.min(1.0)
}

/// Erlang(shape, 1) density.
pub fn erlang_pdf(shape: u32, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return if shape == 1 { 1.0 } else { 0.0 };
    }
    let k = shape as f64;
    ((k - 1.0) * x.ln() - x - ln_gamma(k)).exp()
}

/// Raw moment `E[X^p] = Γ(shape+p)/Γ(shape)` of Erlang(shape, 1).
pub fn erlang_moment(shape: u32, p: f64) -> Result<f64, NumError> {
    let k = shape as f64;
    if shape == 0 {
        return Err(NumError::domain("erlang_moment", "shape must be positive"));
    }
    if p <= -k {
        return Err(NumError::domain("erlang_moment", format!("p = {p} <= -shape = {}", -k)));
    }
    if p >= 0.0 && p == p.round() {
        return Ok(rising(k, p as usize));
    }
    Ok((ln_gamma(k + p) - ln_gamma(k)).exp())
}

fn binom_rising(p: u32, i: usize) -> f64 {
    // C(p+i−1, i) = (p)_i / i!
    (0..i).map(|k| (p as f64 + k as f64) / (k + 1) as f64).product()
}

/// Taylor coefficients of `−Ψ(a1(1−σ), a2(1−τ), p, q)` around σ = τ = 0,
/// divided by `a1^i a2^j`.
///
/// Entry `[i][j]` for `(i, j) ≠ (0, 0)` is
/// `C(p+i−1,i) C(p+j−1,j) ∫₁^∞ w^{i+j} (1+a1 w)^{−p−i} (1+a2 w)^{−p−j} du`
/// with `w = u^{−q/2}`; entry `[0][0]` is `Ψ(a1, a2, p, q)` itself.
/// All entries are positive.
pub fn psi_reduced_coeffs(
    a1: f64,
    a2: f64,
    p: u32,
    q: f64,
    ni: usize,
    nj: usize,
    rel_tol: f64,
) -> Result<Vec<Vec<f64>>, NumError> {
    if !(q > 2.0) {
        return Err(NumError::domain("psi_integral", format!("q = {q} must exceed 2")));
    }
    if !(a1 >= 0.0 && a2 >= 0.0) {
        return Err(NumError::domain("psi_integral", format!("a1 = {a1}, a2 = {a2} must be >= 0")));
    }
    if p == 0 {
        return Err(NumError::domain("psi_integral", "p must be positive"));
    }
    let dim = (ni + 1) * (nj + 1);
    // u = x^{−γ} maps (0,1] onto [1,∞); du = γ dx / w with w = x^{q/(q−2)}.
    let gam = 2.0 / (q - 2.0);
    let wexp = q / (q - 2.0);
    let pf = p as f64;
    let bi: Vec<f64> = (0..=ni).map(|i| binom_rising(p, i)).collect();
    let bj: Vec<f64> = (0..=nj).map(|j| binom_rising(p, j)).collect();
    let integrand = |x: f64, out: &mut [f64]| {
        let w = x.powf(wexp);
        let l1 = (a1 * w).ln_1p();
        let l2 = (a2 * w).ln_1p();
        out[0] = if w == 0.0 {
            gam * pf * (a1 + a2)
        } else {
            gam * -(-pf * (l1 + l2)).exp_m1() / w
        };
        for i in 0..=ni {
            for j in 0..=nj {
                if i + j == 0 {
                    continue;
                }
                let e = (i + j) as f64;
                let v = (e - 1.0) * w.ln() - (pf + i as f64) * l1 - (pf + j as f64) * l2;
                out[i * (nj + 1) + j] = if w == 0.0 {
                    if i + j == 1 {
                        gam * bi[i] * bj[j]
                    } else {
                        0.0
                    }
                } else {
                    gam * bi[i] * bj[j] * v.exp()
                };
            }
        }
    };
    let cfg = QuadConfig {
        abs_tol: 1e-15,
        rel_tol,
        max_intervals: 8000,
    };
    let res = integrate_vec(integrand, 0.0, 1.0, dim, &cfg);
    if !res.converged {
        return Err(NumError::NoConvergence {
            func: "psi_integral",
            args: format!("a1={a1}, a2={a2}, p={p}, q={q}"),
            iterations: res.evaluations,
        });
    }
    Ok((0..=ni)
        .map(|i| res.values[i * (nj + 1)..(i + 1) * (nj + 1)].to_vec())
        .collect())
}

/// `Ψ(a1, a2, p, q) = ∫₁^∞ 1 − [(1 + a1 u^{−q/2})(1 + a2 u^{−q/2})]^{−p} du`.
pub fn psi_integral(a1: f64, a2: f64, p: u32, q: f64) -> Result<f64, NumError> {
    if a1 == 0.0 && a2 == 0.0 && q > 2.0 {
        return Ok(0.0);
    }
    Ok(psi_reduced_coeffs(a1, a2, p, q, 0, 0, 1e-13)?[0][0])
}

/// `1 + Ψ(a1, a2, 1, q)` in closed form.
pub fn psi_closed_p1(a1: f64, a2: f64, q: f64) -> Result<f64, NumError> {
    if !(q > 2.0) {
        return Err(NumError::domain("psi_closed_p1", format!("q = {q} must exceed 2")));
    }
    let f = |x: f64| hyp2f1(HyperGeomArgs::family(q, 1.0, x));
    if (a1 - a2).abs() < 1e-6 * a1.max(a2).max(1.0) {
        // d/dx [x F(x)] = F(x) + x F'(x) at the midpoint.
        let x = 0.5 * (a1 + a2);
        if x == 0.0 {
            return Ok(1.0);
        }
        let args = HyperGeomArgs::family(q, 1.0, x);
        let d1 = hyp2f1_deriv(args, 1, x)? / x;
        return Ok(f(x)? + x * d1);
    }
    Ok((a1 * f(a1)? - a2 * f(a2)?) / (a1 - a2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(hyp2f1(HyperGeomArgs::new(0.3, 2.0, 0.7, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_c_and_positive_x() {
        assert!(matches!(
            hyp2f1(HyperGeomArgs::new(0.3, 2.0, -1.0, -0.5)),
            Err(NumError::Domain { .. })
        ));
        assert!(hyp2f1(HyperGeomArgs::new(0.3, 2.0, 0.5, 0.5)).is_err());
    }

    #[test]
    fn alpha_four_identity_at_one() {
        let v = hyp2f1(HyperGeomArgs::new(-0.5, 1.0, 0.5, -1.0)).unwrap();
        assert!((v - (1.0 + std::f64::consts::FRAC_PI_4)).abs() < 1e-14);
    }

    #[test]
    fn integer_b_minus_a_uses_fallback() {
        // ₂F₁(1, 2; 3; x) = −2(x + ln(1−x))/x²
        let x = -3.0;
        let want = -2.0 * (x + (1.0f64 - x).ln()) / (x * x);
        let v = hyp2f1(HyperGeomArgs::new(1.0, 2.0, 3.0, x)).unwrap();
        assert!((v / want - 1.0).abs() < 1e-12);
    }

    #[test]
    fn erlang_examples() {
        assert_eq!(erlang_ccdf(1, 0.0), 1.0);
        assert!((erlang_ccdf(1, 2f64.ln()) - 0.5).abs() < 1e-15);
        assert!((erlang_ccdf(3, 2.0) - 5.0 * (-2f64).exp()).abs() < 1e-15);
        assert_eq!(erlang_moment(2, 2.0).unwrap(), 6.0);
        assert_eq!(erlang_moment(1, 2.0).unwrap(), 2.0);
        assert_eq!(erlang_moment(5, 1.0).unwrap(), 5.0);
        assert!(erlang_moment(2, -2.0).is_err());
    }

    #[test]
    fn psi_rejects_q_at_most_two() {
        assert!(psi_integral(1.0, 1.0, 1, 2.0).is_err());
        assert!(psi_closed_p1(1.0, 1.0, 1.5).is_err());
    }
}
