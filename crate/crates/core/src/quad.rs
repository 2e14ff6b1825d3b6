//! Globally adaptive Gauss–Kronrod quadrature (10-point Gauss, 21-point Kronrod).
//!
//! The vector form integrates several components that share one integrand
//! evaluation; an interval is refined until every component meets
//! `abs_tol + rel_tol·|I_k|`.

use std::collections::BinaryHeap;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_600_008_635,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Tolerances and budget for [`integrate`] / [`integrate_vec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

/// Result of a vector integration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadOutput {
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub evaluations: usize,
    /// False when the interval budget ran out before the tolerance was met.
    pub converged: bool,
}

/// Result of a scalar integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadScalar {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    values: Vec<f64>,
    errors: Vec<f64>,
    badness: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.badness == other.badness
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.badness.total_cmp(&other.badness)
    }
}

fn gk21<F: FnMut(f64, &mut [f64])>(
    f: &mut F,
    a: f64,
    b: f64,
    dim: usize,
    buf: &mut [f64],
    values: &mut [f64],
    errors: &mut [f64],
) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = vec![0.0; 21 * dim];
    let mut weights = [0.0; 21];
    let mut gweights = [0.0; 21];

    f(c, buf);
    fv[..dim].copy_from_slice(buf);
    weights[0] = WGK[10];
    for i in 0..10 {
        let dx = h * XGK[i];
        for (s, x) in [c - dx, c + dx].into_iter().enumerate() {
            let slot = 1 + 2 * i + s;
            f(x, buf);
            fv[slot * dim..(slot + 1) * dim].copy_from_slice(buf);
            weights[slot] = WGK[i];
            if i % 2 == 1 {
                gweights[slot] = WG[i / 2];
            }
        }
    }
    // Error estimate as in QUADPACK's qk21.
    for k in 0..dim {
        let mut resk = 0.0;
        let mut resg = 0.0;
        let mut resabs = 0.0;
        for slot in 0..21 {
            let v = fv[slot * dim + k];
            resk += weights[slot] * v;
            resg += gweights[slot] * v;
            resabs += weights[slot] * v.abs();
        }
        let mean = 0.5 * resk;
        let resasc: f64 = (0..21)
            .map(|slot| weights[slot] * (fv[slot * dim + k] - mean).abs())
            .sum::<f64>()
            * h.abs();
        let resabs = resabs * h.abs();
        let mut err = ((resk - resg) * h).abs();
        if resasc != 0.0 && err != 0.0 {
            err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * resabs);
        }
        values[k] = resk * h;
        errors[k] = if values[k].is_finite() { err } else { f64::INFINITY };
    }
}

fn badness(values: &[f64], errors: &[f64], totals: &[f64], cfg: &QuadConfig) -> f64 {
    // Ratio of the local error to the share of the global tolerance.
    errors
        .iter()
        .zip(values)
        .zip(totals)
        .map(|((e, _), t)| {
            let tol = cfg.abs_tol + cfg.rel_tol * t.abs();
            if *e == 0.0 {
                0.0
            } else if tol == 0.0 {
                f64::INFINITY
            } else {
                e / tol
            }
        })
        .fold(0.0, f64::max)
}

/// Integrates a vector-valued function over `[a, b]`, starting from the
/// partition given by `breaks` (which must include both end points).
pub fn integrate_vec_breaks<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    breaks: &[f64],
    dim: usize,
    cfg: &QuadConfig,
) -> QuadOutput {
    assert!(breaks.len() >= 2, "need at least one interval");
    let mut buf = vec![0.0; dim];
    let mut evaluations = 0;
    let mut segments = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        let mut values = vec![0.0; dim];
        let mut errors = vec![0.0; dim];
        gk21(&mut f, w[0], w[1], dim, &mut buf, &mut values, &mut errors);
        evaluations += 21;
        segments.push(Segment {
            a: w[0],
            b: w[1],
            values,
            errors,
            badness: 0.0,
        });
    }

    let sum_over = |segs: &mut dyn Iterator<Item = &Segment>| -> (Vec<f64>, Vec<f64>) {
        let mut tv = vec![0.0; dim];
        let mut te = vec![0.0; dim];
        for s in segs {
            for k in 0..dim {
                tv[k] += s.values[k];
                te[k] += s.errors[k];
            }
        }
        (tv, te)
    };

    let (mut totals, mut total_err) = sum_over(&mut segments.iter());
    for s in segments.iter_mut() {
        s.badness = badness(&s.values, &s.errors, &totals, cfg);
    }
    let mut heap: BinaryHeap<Segment> = segments.into_iter().collect();

    let done = |tv: &[f64], te: &[f64]| {
        tv.iter()
            .zip(te)
            .all(|(v, e)| *e <= cfg.abs_tol + cfg.rel_tol * v.abs())
    };

    let mut converged = done(&totals, &total_err);
    let mut since_refresh = 0;
    while !converged && heap.len() < cfg.max_intervals {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval can no longer be split in floating point.
            heap.push(Segment {
                badness: 0.0,
                ..worst
            });
            if heap.iter().all(|s| s.badness == 0.0) {
                break;
            }
            continue;
        }
        let mut children = Vec::with_capacity(2);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let mut values = vec![0.0; dim];
            let mut errors = vec![0.0; dim];
            gk21(&mut f, lo, hi, dim, &mut buf, &mut values, &mut errors);
            evaluations += 21;
            children.push(Segment {
                a: lo,
                b: hi,
                values,
                errors,
                badness: 0.0,
            });
        }
        for k in 0..dim {
            totals[k] += children[0].values[k] + children[1].values[k] - worst.values[k];
            total_err[k] += children[0].errors[k] + children[1].errors[k] - worst.errors[k];
        }
        for mut c in children {
            c.badness = badness(&c.values, &c.errors, &totals, cfg);
            heap.push(c);
        }
        since_refresh += 1;
        if since_refresh >= 64 {
            // Re-sum from scratch to stop drift, and refresh priorities
            // against the updated totals.
            since_refresh = 0;
            let segs: Vec<Segment> = heap.drain().collect();
            let (tv, te) = sum_over(&mut segs.iter());
            totals = tv;
            total_err = te;
            heap = segs
                .into_iter()
                .map(|mut s| {
                    s.badness = badness(&s.values, &s.errors, &totals, cfg);
                    s
                })
                .collect();
        }
        converged = done(&totals, &total_err);
        if converged {
            // Confirm against a fresh sum; the running totals can drift
            // across the tolerance boundary.
            let (tv, te) = sum_over(&mut heap.iter());
            totals = tv;
            total_err = te;
            converged = done(&totals, &total_err);
        }
    }

    let segs: Vec<Segment> = heap.into_vec();
    let (values, errors) = sum_over(&mut segs.iter());
    let converged = done(&values, &errors);
    QuadOutput {
        values,
        errors,
        evaluations,
        converged,
    }
}

/// Integrates a vector-valued function over `[a, b]`.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    f: F,
    a: f64,
    b: f64,
    dim: usize,
    cfg: &QuadConfig,
) -> QuadOutput {
    integrate_vec_breaks(f, &[a, b], dim, cfg)
}

/// Integrates a scalar function over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadScalar {
    let out = integrate_vec(|x, y: &mut [f64]| y[0] = f(x), a, b, 1, cfg);
    QuadScalar {
        value: out.values[0],
        error: out.errors[0],
        evaluations: out.evaluations,
        converged: out.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_and_kronrod_agree_on_degree_19() {
        let cfg = QuadConfig::new(0.0, 1e-13);
        let r = integrate(|x| x.powi(18) + x.powi(19), 0.0, 1.0, &cfg);
        assert!((r.value - (1.0 / 19.0 + 1.0 / 20.0)).abs() < 1e-15);
        assert_eq!(r.evaluations, 21);
    }

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adapts_to_endpoint_singularity() {
        let cfg = QuadConfig::new(0.0, 1e-12);
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, &cfg);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn vector_components_each_meet_tolerance() {
        let cfg = QuadConfig::new(0.0, 1e-12);
        let r = integrate_vec(
            |x, y: &mut [f64]| {
                y[0] = (-x).exp();
                y[1] = 1e-20 * x.cos();
            },
            0.0,
            40.0,
            2,
            &cfg,
        );
        assert!(r.converged);
        assert!((r.values[0] - (1.0 - (-40.0f64).exp())).abs() < 1e-12);
        assert!((r.values[1] / (1e-20 * 40.0f64.sin()) - 1.0).abs() < 1e-11);
    }
}
