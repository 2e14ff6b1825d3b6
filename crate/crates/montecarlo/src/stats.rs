/// Wilson score interval for `successes` out of `n` trials at `z` standard
/// deviations.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Half-width of the one-sigma Wilson interval. Unlike the plain binomial
/// standard error it stays positive at 0 and 1.
pub fn wilson_se(successes: u64, n: u64) -> f64 {
    if n == 0 {
        return 0.5;
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    (p * (1.0 - p) / nf + 1.0 / (4.0 * nf * nf)).sqrt() / (1.0 + 1.0 / nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // 8 of 10 at 95%: (0.4902, 0.9433).
        let (lo, hi) = wilson_interval(8, 10, 1.959964);
        assert!((lo - 0.4902).abs() < 1e-4 && (hi - 0.9433).abs() < 1e-4);
        let (lo, hi) = wilson_interval(500, 1000, 1.0);
        assert!(((hi - lo) / 2.0 - wilson_se(500, 1000)).abs() < 1e-15);
        assert!(wilson_se(0, 100) > 0.0 && wilson_se(100, 100) > 0.0);
    }

    #[test]
    fn square_root_law() {
        let a = wilson_se(3000, 10_000);
        let b = wilson_se(12_000, 40_000);
        assert!((a / b - 2.0).abs() < 1e-3);
    }
}
