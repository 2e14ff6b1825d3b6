//! Truncated power series in one and two variables.
//!
//! Coefficients are stored lowest order first. A bivariate series of orders
//! `(ni, nj)` is a row-major `(ni+1) × (nj+1)` array, entry `[i][j]` being the
//! coefficient of `σ^i τ^j`.

/// Bivariate truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct Series2 {
    ni: usize,
    nj: usize,
    c: Vec<f64>,
}

impl Series2 {
    pub fn zeros(ni: usize, nj: usize) -> Self {
        Self {
            ni,
            nj,
            c: vec![0.0; (ni + 1) * (nj + 1)],
        }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.ni, self.nj)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[i * (self.nj + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.c[i * (self.nj + 1) + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.c[i * (self.nj + 1) + j] += v;
    }

    pub fn fill(&mut self, v: f64) {
        self.c.iter_mut().for_each(|x| *x = v);
    }

    /// `self += c · x` for a series of the same orders.
    pub fn axpy(&mut self, c: f64, x: &Series2) {
        assert_eq!(self.orders(), x.orders(), "series orders differ");
        for (s, v) in self.c.iter_mut().zip(&x.c) {
            *s += c * v;
        }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.c[i * (self.nj + 1)..(i + 1) * (self.nj + 1)]
    }

    /// `exp` of the series, truncated to the same orders.
    pub fn exp(&self) -> Series2 {
        let (ni, nj) = (self.ni, self.nj);
        let mut out = Series2::zeros(ni, nj);
        let q0 = exp_series(self.row(0));
        out.c[..nj + 1].copy_from_slice(&q0);
        // Q_n = (1/n) Σ_{k=1..n} k E_k Q_{n-k}, products truncated in τ.
        let mut acc = vec![0.0; nj + 1];
        for n in 1..=ni {
            acc.iter_mut().for_each(|v| *v = 0.0);
            for k in 1..=n {
                let ek = self.row(k);
                let qrow = out.row(n - k).to_vec();
                let w = k as f64;
                for (a, e) in ek.iter().enumerate() {
                    if *e == 0.0 {
                        continue;
                    }
                    for b in 0..=(nj - a) {
                        acc[a + b] += w * e * qrow[b];
                    }
                }
            }
            let inv = 1.0 / n as f64;
            for j in 0..=nj {
                out.set(n, j, acc[j] * inv);
            }
        }
        out
    }

    /// `1 / self`, truncated to the same orders. Requires a non-zero constant term.
    pub fn recip(&self) -> Series2 {
        let (ni, nj) = (self.ni, self.nj);
        let a00 = self.get(0, 0);
        let mut out = Series2::zeros(ni, nj);
        for i in 0..=ni {
            for j in 0..=nj {
                let mut s = if i + j == 0 { 1.0 } else { 0.0 };
                for k in 0..=i {
                    for l in 0..=j {
                        if k + l > 0 {
                            s -= self.get(k, l) * out.get(i - k, j - l);
                        }
                    }
                }
                out.set(i, j, s / a00);
            }
        }
        out
    }
}

/// `1 / a` for a univariate truncated series with `a[0] ≠ 0`.
pub fn recip_series(a: &[f64]) -> Vec<f64> {
    let mut r = vec![0.0; a.len()];
    if a.is_empty() {
        return r;
    }
    for n in 0..a.len() {
        let mut s = if n == 0 { 1.0 } else { 0.0 };
        for k in 1..=n {
            s -= a[k] * r[n - k];
        }
        r[n] = s / a[0];
    }
    r
}

/// `exp` of a univariate truncated series.
pub fn exp_series(e: &[f64]) -> Vec<f64> {
    let n = e.len();
    let mut b = vec![0.0; n];
    if n == 0 {
        return b;
    }
    b[0] = e[0].exp();
    for m in 1..n {
        let mut s = 0.0;
        for k in 1..=m {
            s += k as f64 * e[k] * b[m - k];
        }
        b[m] = s / m as f64;
    }
    b
}

/// Product of two univariate series, truncated to the shorter length.
pub fn mul_series(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}
