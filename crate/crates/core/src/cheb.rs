//! Derivatives at s = 1 from Chebyshev interpolation.
//!
//! The function is sampled at first-kind Chebyshev points of the plan's
//! interval, the interpolant's Chebyshev coefficients are formed directly,
//! and the coefficient recurrence for differentiation is applied before a
//! Clenshaw evaluation at the mapped point.

use crate::NumError;
use std::f64::consts::PI;

/// Where and how densely to sample for derivatives up to `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevDiffPlan {
    order: usize,
    lo: f64,
    hi: f64,
    nodes: Vec<f64>,
}

impl ChebyshevDiffPlan {
    /// Default plan: interval [0.5, 1.5] and max(16, 4·order) nodes.
    pub fn new(order: usize) -> Self {
        Self::with_nodes(order, (4 * order).max(16), 0.5, 1.5)
            .expect("default plan is always valid")
    }

    pub fn with_nodes(order: usize, node_count: usize, lo: f64, hi: f64) -> Result<Self, NumError> {
        if order == 0 && node_count == 0 {
            return Err(NumError::domain("ChebyshevDiffPlan", "node_count must be positive"));
        }
        if node_count < order + 1 {
            return Err(NumError::domain(
                "ChebyshevDiffPlan",
                format!("node_count {node_count} < order + 1 = {}", order + 1),
            ));
        }
        if !(lo < 1.0 && 1.0 < hi) {
            return Err(NumError::domain(
                "ChebyshevDiffPlan",
                format!("interval [{lo}, {hi}] does not strictly contain 1"),
            ));
        }
        let n = node_count;
        let nodes = (0..n)
            .map(|j| {
                let t = -((2 * j + 1) as f64 * PI / (2 * n) as f64).cos();
                0.5 * (lo + hi) + 0.5 * (hi - lo) * t
            })
            .collect();
        Ok(Self { order, lo, hi, nodes })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Chebyshev coefficients of the interpolant through `values` at the nodes.
    fn coefficients(&self, values: &[f64]) -> Vec<f64> {
        let n = self.nodes.len();
        (0..n)
            .map(|k| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        // Node j corresponds to angle π − θ_j, so T_k picks up (−1)^k.
                        let theta = (2 * j + 1) as f64 * PI / (2 * n) as f64;
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        v * sign * (k as f64 * theta).cos()
                    })
                    .sum();
                let scale = if k == 0 { 1.0 } else { 2.0 };
                scale * s / n as f64
            })
            .collect::<Vec<f64>>()
            .chop()
    }

    /// Applies the derivative and evaluates at s = 1 for derivative orders
    /// 0..=order.
    fn derivatives_from_coefficients(&self, coef: &[f64]) -> Vec<f64> {
        let t1 = (2.0 - self.lo - self.hi) / (self.hi - self.lo);
        let dscale = 2.0 / (self.hi - self.lo);
        let mut out = Vec::with_capacity(self.order + 1);
        let mut c = coef.to_vec();
        let mut factor = 1.0;
        for m in 0..=self.order {
            out.push(factor * clenshaw(&c, t1));
            if m < self.order {
                c = derivative_coefficients(&c);
                factor *= dscale;
            }
        }
        out
    }
}

trait Chop {
    fn chop(self) -> Self;
}

impl Chop for Vec<f64> {
    /// Drops the trailing coefficients that sit at rounding level; the
    /// differentiation recurrence would otherwise amplify them by k².
    fn chop(mut self) -> Self {
        let cmax = self.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let floor = 16.0 * f64::EPSILON * cmax;
        while self.len() > 1 && self.last().is_some_and(|c| c.abs() <= floor) {
            self.pop();
        }
        self
    }
}

fn derivative_coefficients(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n];
    // d_{k-1} = d_{k+1} + 2 k c_k, with d_0 halved at the end.
    for k in (1..n).rev() {
        let next = if k + 1 < n { d[k + 1] } else { 0.0 };
        d[k - 1] = next + 2.0 * k as f64 * c[k];
    }
    d[0] *= 0.5;
    d.truncate(n - 1);
    d
}

fn clenshaw(c: &[f64], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

/// Returns `[f(1), f'(1), …, f^{(order)}(1)]`.
pub fn cheb_derivatives<E, F>(mut f: F, plan: &ChebyshevDiffPlan) -> Result<Vec<f64>, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let values = plan
        .nodes
        .iter()
        .map(|&s| f(s))
        .collect::<Result<Vec<_>, E>>()?;
    let coef = plan.coefficients(&values);
    Ok(plan.derivatives_from_coefficients(&coef))
}

/// Returns `D[i][j] = ∂^{i+j} f / ∂s^i ∂t^j` at (1, 1).
pub fn mixed_cheb_derivatives<E, F>(
    mut f: F,
    plan_s: &ChebyshevDiffPlan,
    plan_t: &ChebyshevDiffPlan,
) -> Result<Vec<Vec<f64>>, E>
where
    F: FnMut(f64, f64) -> Result<f64, E>,
{
    let ns = plan_s.node_count();
    let nt = plan_t.node_count();
    let mut grid = vec![vec![0.0; nt]; ns];
    for (i, &s) in plan_s.nodes.iter().enumerate() {
        for (j, &t) in plan_t.nodes.iter().enumerate() {
            grid[i][j] = f(s, t)?;
        }
    }
    // Differentiate along t for every s-node, then along s for every t-order.
    let along_t: Vec<Vec<f64>> = grid
        .iter()
        .map(|row| plan_t.derivatives_from_coefficients(&plan_t.coefficients(row)))
        .collect();
    let mut out = vec![vec![0.0; plan_t.order + 1]; plan_s.order + 1];
    for j in 0..=plan_t.order {
        let column: Vec<f64> = along_t.iter().map(|r| r[j]).collect();
        let d = plan_s.derivatives_from_coefficients(&plan_s.coefficients(&column));
        for i in 0..=plan_s.order {
            out[i][j] = d[i];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn plan_validation() {
        assert!(ChebyshevDiffPlan::with_nodes(3, 3, 0.5, 1.5).is_err());
        assert!(ChebyshevDiffPlan::with_nodes(1, 4, 1.0, 1.5).is_err());
        let p = ChebyshevDiffPlan::new(5);
        assert_eq!(p.node_count(), 20);
        assert!(p.nodes().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ChebyshevDiffPlan::new(2).node_count(), 16);
    }

    #[test]
    fn cubic_is_exact() {
        let p = ChebyshevDiffPlan::with_nodes(3, 6, 0.2, 1.9).unwrap();
        let d = cheb_derivatives(|s| Ok::<_, Infallible>(s * s * s), &p).unwrap();
        for (got, want) in d.iter().zip([1.0, 3.0, 6.0, 6.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }
}
