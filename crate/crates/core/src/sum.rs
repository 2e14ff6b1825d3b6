//! Neumaier-compensated summation with a cancellation monitor.

/// Running compensated sum.
///
/// Besides the sum itself it keeps the largest absolute term seen, so callers
/// can tell how many digits were lost to cancellation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
    max_abs: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.max_abs = self.max_abs.max(x.abs());
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Decimal digits lost to cancellation: log10(max |term| / |sum|).
    pub fn digits_lost(&self) -> f64 {
        let v = self.value().abs();
        if self.max_abs == 0.0 {
            0.0
        } else if v == 0.0 {
            f64::INFINITY
        } else {
            (self.max_abs / v).log10().max(0.0)
        }
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_sum() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        assert!((s.value() - (1.0 + 1e-13)).abs() < 1e-16);
    }

    #[test]
    fn reports_cancellation() {
        let s: KahanSum = [1e8, 1.0, -1e8].into_iter().collect();
        assert_eq!(s.value(), 1.0);
        assert!((s.digits_lost() - 8.0).abs() < 1e-12);
    }
}
