//! Structural properties of the coverage formulas: special cases, orderings,
//! invariances and agreement between independent evaluation routes.

use hetdiv_analytic::*;
use hetdiv_core::specfun::{hyp2f1, HyperGeomArgs};
use hetdiv_hetnet::{presets, NetworkConfig, OstbcCode, TierConfig};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn siso_closed(alpha: f64, t: f64) -> f64 {
    1.0 / hyp2f1(HyperGeomArgs::family(alpha, 1.0, t)).unwrap()
}

fn code(m: u32) -> OstbcCode {
    match m {
        1 => OstbcCode::siso(),
        2 => OstbcCode::alamouti(),
        _ => OstbcCode::ostbc4_three_quarter(),
    }
}

fn net_from(tiers: &[(f64, f64, f64, u32)], n_rx: u32, noise: f64) -> NetworkConfig {
    let tiers = tiers
        .iter()
        .map(|&(d, p, a, m)| TierConfig::new(d, p, a, code(m)).unwrap())
        .collect();
    NetworkConfig::new(tiers, n_rx, noise).unwrap()
}

#[test]
fn siso_alpha_four_closed_form() {
    let net = presets::single_tier(4.0, OstbcCode::siso(), 1);
    let p = coverage_ib_mrc(&net, 1.0).unwrap();
    let want = 1.0 / (1.0 + std::f64::consts::FRAC_PI_4);
    assert!((p - want).abs() < 1e-10, "{p} vs {want}");
    assert!((p - 0.56010).abs() < 1e-5);
}

#[test]
fn siso_scheme_is_the_closed_form_for_any_tiers() {
    for alpha in [3.2, 3.7, 4.5] {
        let net = presets::equal_alpha(alpha, OstbcCode::alamouti(), 2);
        let q = CoverageQuery::new(net, db_grid(-10.0, 20.0, 13), Scheme::Siso, false).unwrap();
        let curve = evaluate_curve(&q).unwrap();
        for &(t, p) in &curve.points {
            let want = siso_closed(alpha, t);
            assert!((p - want).abs() < 1e-8, "alpha {alpha} T {t}: {p} vs {want}");
        }
    }
}

#[test]
fn full_correlation_equals_ib_bitwise() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let tier = (1e-6..1e-4f64, 0.1..50.0f64, 2.5..5.0f64, 1u32..=3);
    let strategy = (prop::collection::vec(tier, 1..=3), 1u32..=4, prop::bool::ANY, 0.05..20.0f64);
    for _ in 0..5 {
        let (tiers, n, noisy, t) = strategy.new_tree(&mut runner).unwrap().current();
        let net = net_from(&tiers, n, if noisy { 1e-12 } else { 0.0 });
        let fc = coverage_ia_fullcorr(&net, t).unwrap();
        let ib = coverage_ib_mrc(&net, t).unwrap();
        assert_eq!(fc.to_bits(), ib.to_bits());
        let grid = db_grid(-10.0, 20.0, 7);
        let a = evaluate_curve(&CoverageQuery::new(net.clone(), grid.clone(), Scheme::IaFc, false).unwrap()).unwrap();
        let b = evaluate_curve(&CoverageQuery::new(net, grid, Scheme::IbMrc, false).unwrap()).unwrap();
        assert_eq!(a.points, b.points);
    }
}

#[test]
fn general_formulas_reduce_to_the_simplified_ones() {
    for alpha in [3.2, 3.7, 4.4] {
        for t in [0.2, 1.0, 8.0] {
            for (n, m) in [(1, 1), (2, 1), (2, 2), (4, 1), (2, 4), (4, 4)] {
                let c = code(m);
                let net = presets::equal_alpha(alpha, c.clone(), n);
                let general = coverage_ib_mrc(&net, t).unwrap();
                let simple = coverage_ib_mrc_simplified(alpha, n, c.s_active(), c.m_tx(), t).unwrap();
                assert!((general - simple).abs() < 1e-6, "IB a={alpha} T={t} N={n} M={m}: {general} vs {simple}");
            }
            for m in [1, 2] {
                let net = presets::equal_alpha(alpha, code(m), 2);
                let general = coverage_ia_mrc(&net, t).unwrap();
                let simple = coverage_ia_simplified(alpha, m, t).unwrap();
                assert!((general - simple).abs() < 1e-5, "IA a={alpha} T={t} M={m}: {general} vs {simple}");
            }
            for n in [1, 2, 3] {
                let net = presets::equal_alpha(alpha, OstbcCode::siso(), n);
                let general = coverage_sc(&net, t).unwrap();
                let simple = coverage_sc_simplified(alpha, n, t).unwrap();
                assert!((general - simple).abs() < 1e-6, "SC a={alpha} T={t} N={n}: {general} vs {simple}");
            }
        }
    }
}

#[test]
fn sc_with_one_antenna_is_siso() {
    let net = presets::table2(1, Some(-104.0)).siso();
    for t in [0.3, 3.0] {
        let sc = coverage_sc(&net, t).unwrap();
        let ib = coverage_ib_mrc(&net, t).unwrap();
        assert!((sc - ib).abs() < 1e-10);
    }
}

#[test]
fn two_term_decompositions() {
    for alpha in [3.2, 3.7, 4.0, 4.8] {
        for t in [0.25, 1.0, 4.0, 20.0] {
            let siso = coverage_siso_simplified(alpha, t).unwrap();
            let ib = coverage_ib_mrc_simplified(alpha, 2, 1, 1, t).unwrap();
            assert!((ib - siso - gain_ib(alpha, t).unwrap()).abs() < 1e-9);
            let ia = coverage_ia_simplified(alpha, 1, t).unwrap();
            assert!((ia - siso - gain_ia(alpha, t).unwrap()).abs() < 1e-6);
        }
    }
}

#[test]
fn gain_ia_routes_agree() {
    for alpha in [2.6, 3.2, 3.7, 4.0, 4.8] {
        for t in [0.1, 1.0, 3.0, 30.0] {
            let a = gain_ia(alpha, t).unwrap();
            let b = gain_ia_explicit(alpha, t).unwrap();
            assert!((a - b).abs() < 1e-8, "alpha {alpha} T {t}: {a} vs {b}");
        }
    }
}

#[test]
fn gain_ib_alpha_four() {
    // With α = 4 the function is 1 + √x·atan√x, whose derivative is elementary.
    let g = gain_ib(4.0, 1.0).unwrap();
    let pi = std::f64::consts::PI;
    let want = (pi / 8.0 + 0.25) / (1.0 + pi / 4.0).powi(2);
    assert!((g - want).abs() < 1e-12, "{g} vs {want}");
    let h = 1e-4;
    let f = |s: f64| 1.0 + s.sqrt() * s.sqrt().atan();
    let fd = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h) / (1.0 + pi / 4.0).powi(2);
    assert!((g - fd).abs() < 1e-8);
}

#[test]
fn gains_vanish_at_small_threshold_and_ia_dominates() {
    for alpha in [3.2, 4.0, 4.8] {
        assert!(gain_ib(alpha, 1e-7).unwrap() < 1e-6);
        assert!(gain_ia(alpha, 1e-7).unwrap() < 1e-6);
        for db in [-6.0, -2.0, 2.0, 6.0, 10.0, 14.0, 19.0] {
            let t = 10f64.powf(db / 10.0);
            let (gib, gia) = (gain_ib(alpha, t).unwrap(), gain_ia(alpha, t).unwrap());
            assert!(gia >= gib - 1e-9, "alpha {alpha} T {db} dB: {gia} < {gib}");
        }
    }
}

#[test]
fn vanishing_threshold_gives_full_coverage() {
    let t = 1e-9;
    assert!((coverage_ia_simplified(3.7, 2, t).unwrap() - 1.0).abs() < 1e-6);
    let net = presets::equal_alpha(3.7, OstbcCode::alamouti(), 2);
    for s in [Scheme::IbMrc, Scheme::IaMrc, Scheme::IaNc, Scheme::IaFc] {
        let p = coverage(&net, s, &[t; 3]).unwrap().value;
        assert!((p - 1.0).abs() < 1e-6, "{s}: {p}");
    }
}

#[test]
fn correlation_models_bracket_the_exact_one() {
    for m in [1, 2] {
        let net = presets::equal_alpha(3.7, code(m), 2);
        for t in db_grid(-10.0, 20.0, 16) {
            let nc = coverage_ia_nocorr(&net, t).unwrap();
            let ex = coverage_ia_mrc(&net, t).unwrap();
            let fc = coverage_ia_fullcorr(&net, t).unwrap();
            let ib = coverage_ib_mrc(&net, t).unwrap();
            assert!(nc >= ex - 1e-8, "M={m} T={t}: NC {nc} < exact {ex}");
            assert!(ex >= fc - 1e-8, "M={m} T={t}: exact {ex} < FC {fc}");
            assert_eq!(fc, ib);
        }
    }
}

#[test]
fn interference_aware_beats_blind_on_reference_grids() {
    let nets = [
        presets::equal_alpha(3.7, OstbcCode::alamouti(), 2),
        presets::equal_alpha(3.7, OstbcCode::siso(), 2),
        net_from(&[(4e-6, 40.0, 3.76, 2), (4e-5, 0.25, 3.5, 1)], 2, 4e-14),
    ];
    for net in &nets {
        for t in db_grid(-10.0, 20.0, 7) {
            let ia = coverage_ia_mrc(net, t).unwrap();
            let ib = coverage_ib_mrc(net, t).unwrap();
            assert!(ia >= ib - 1e-8, "T={t}: IA {ia} < IB {ib}");
        }
    }
}

#[test]
fn mrc_beats_selection() {
    for n in [2, 3, 4] {
        let net = presets::table2(n, Some(-104.0)).with_code(&OstbcCode::siso());
        for t in db_grid(-10.0, 20.0, 7) {
            let ib = coverage_ib_mrc(&net, t).unwrap();
            let sc = coverage_sc(&net, t).unwrap();
            assert!(ib >= sc - 1e-9, "N={n} T={t}: IB {ib} < SC {sc}");
        }
    }
}

#[test]
fn coverage_and_outage_are_complementary() {
    let net = presets::table2(2, Some(-104.0));
    for t in [0.05, 1.0, 20.0] {
        let s = coverage_ib_mrc(&net, t).unwrap() + outage_ib_mrc(&net, t).unwrap();
        assert!((s - 1.0).abs() < 1e-8);
    }
    let net = presets::equal_alpha(3.7, OstbcCode::alamouti(), 2);
    for t in [0.05, 1.0, 20.0] {
        let s = coverage_ia_mrc(&net, t).unwrap() + outage_ia_mrc(&net, t).unwrap();
        assert!((s - 1.0).abs() < 1e-8);
    }
}

#[test]
fn outage_slope_is_the_diversity_order() {
    for m in [1u32, 2] {
        let net = presets::single_tier(3.7, code(m), 2);
        let order = (2 * m) as f64;
        for (name, f) in [
            ("IA", outage_ia_mrc as fn(&NetworkConfig, f64) -> Result<f64>),
            ("IB", outage_ib_mrc),
        ] {
            let (o1, o2) = (f(&net, 1e-3).unwrap(), f(&net, 1e-2).unwrap());
            let slope = (o2 / o1).log10();
            assert!((slope - order).abs() < 0.1 * order, "{name} M={m}: slope {slope}");
        }
    }
}

#[test]
fn chebyshev_route_matches_series() {
    let cases = [
        presets::single_tier(3.7, OstbcCode::alamouti(), 2),
        presets::single_tier(4.2, OstbcCode::siso(), 2),
        net_from(&[(4e-6, 40.0, 3.76, 2), (4e-5, 0.25, 3.5, 1)], 2, 4e-14),
    ];
    for net in &cases {
        for t in [0.5, 4.0] {
            let series = coverage_ia_mrc(net, t).unwrap();
            let cheb = coverage_ia_mrc_chebyshev(net, t).unwrap().value;
            assert!((series - cheb).abs() < 1e-6, "T={t}: {series} vs {cheb}");
        }
    }
}

#[test]
fn curve_evaluation_is_schedule_independent() {
    let net = presets::table2(2, Some(-104.0));
    let q = CoverageQuery::new(net, db_grid(-10.0, 20.0, 11), Scheme::IbMrc, true).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| evaluate_curve(&q).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a, b);
    assert_eq!(a.method, Method::Analytic);
    assert_eq!(a.est_abs_error.len(), 11);
}

#[test]
fn rate_loss_raises_tier_thresholds() {
    let net = presets::table2(2, None);
    let q = CoverageQuery::new(net.clone(), vec![1.0], Scheme::IbMrc, true).unwrap();
    let ts = q.tier_thresholds(1.0);
    assert!((ts[0] - (2f64.powf(4.0 / 3.0) - 1.0)).abs() < 1e-14);
    assert_eq!(&ts[1..], &[1.0, 1.0]);
    let with = evaluate_curve(&q).unwrap().points[0].1;
    let without = evaluate_curve(&CoverageQuery::new(net, vec![1.0], Scheme::IbMrc, false).unwrap())
        .unwrap()
        .points[0]
        .1;
    assert!(with < without);
}

#[test]
fn unsupported_configurations_are_rejected() {
    let n4 = presets::equal_alpha(3.7, OstbcCode::siso(), 4);
    assert!(matches!(coverage_ia_mrc(&n4, 1.0), Err(AnalyticError::Unsupported(_))));
    assert!(matches!(coverage_ia_nocorr(&n4, 1.0), Err(AnalyticError::Unsupported(_))));
    let m4 = presets::table2(2, None);
    assert!(matches!(coverage_ia_mrc(&m4, 1.0), Err(AnalyticError::Unsupported(_))));
    assert!(matches!(coverage_sc(&m4, 1.0), Err(AnalyticError::Unsupported(_))));
    assert!(CoverageQuery::new(m4.clone(), vec![1.0], Scheme::Sc, false).is_err());
    assert!(CoverageQuery::new(m4.clone(), vec![2.0, 1.0], Scheme::IbMrc, false).is_err());
    assert!(CoverageQuery::new(m4.clone(), vec![0.0, 1.0], Scheme::IbMrc, false).is_err());
    assert!(CoverageQuery::new(m4.clone(), vec![], Scheme::IbMrc, false).is_err());
    assert!(coverage_ib_mrc(&m4, -1.0).is_err());
    assert!(coverage_ib_mrc(&m4, f64::NAN).is_err());
    assert!(coverage_ia_simplified(3.7, 3, 1.0).is_err());
    assert!(gain_ib(2.0, 1.0).is_err());
    assert!(coverage_ib_mrc_tiered(&m4, &[1.0]).is_err());
}

#[test]
fn scheme_names_round_trip() {
    for s in Scheme::ALL {
        assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
    }
    assert_eq!("ia-nc".parse::<Scheme>().unwrap(), Scheme::IaNc);
    assert!("MMSE".parse::<Scheme>().is_err());
}

#[test]
fn grids() {
    let g = default_grid();
    assert_eq!(g.len(), 41);
    assert!((g[0] - 0.1).abs() < 1e-15 && (g[40] - 100.0).abs() < 1e-12);
    assert_eq!(db_grid(3.0, 9.0, 1), vec![10f64.powf(0.3)]);
    assert!(db_grid(0.0, 1.0, 0).is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn coverage_is_a_ccdf(
        tiers in prop::collection::vec((1e-6..1e-4f64, 0.1..50.0f64, 2.5..5.0f64, 1u32..=2), 1..=3),
        noisy in prop::bool::ANY,
        t1 in 0.05..30.0f64,
        ratio in 1.05..4.0f64,
    ) {
        let noise = if noisy { 1e-13 } else { 0.0 };
        let t2 = t1 * ratio;
        let n2 = net_from(&tiers, 2, noise);
        for f in [coverage_ib_mrc as fn(&NetworkConfig, f64) -> Result<f64>, coverage_ia_mrc, coverage_ia_nocorr] {
            let (p1, p2) = (f(&n2, t1).unwrap(), f(&n2, t2).unwrap());
            prop_assert!((0.0..=1.0 + 1e-9).contains(&p1));
            prop_assert!(p2 >= -1e-12);
            prop_assert!(p2 <= p1 + 1e-9, "{p2} > {p1}");
        }
        let sc_net = n2.with_code(&OstbcCode::siso());
        let (p1, p2) = (coverage_sc(&sc_net, t1).unwrap(), coverage_sc(&sc_net, t2).unwrap());
        prop_assert!(p2 <= p1 + 1e-9 && (0.0..=1.0 + 1e-9).contains(&p1));
    }

    #[test]
    fn interference_limited_coverage_ignores_density_scale_and_powers(
        scale in 0.01..100.0f64,
        powers in prop::collection::vec(0.01..100.0f64, 3),
        alpha in 2.8..4.8f64,
        t in 0.1..20.0f64,
    ) {
        let base = presets::equal_alpha(alpha, OstbcCode::alamouti(), 2);
        let tiers: Vec<TierConfig> = base
            .tiers()
            .iter()
            .zip(&powers)
            .map(|(tr, &p)| TierConfig::new(tr.density * scale, p, alpha, tr.code.clone()).unwrap())
            .collect();
        let moved = NetworkConfig::new(tiers, 2, 0.0).unwrap();
        for f in [coverage_ib_mrc as fn(&NetworkConfig, f64) -> Result<f64>, coverage_ia_mrc, coverage_ia_nocorr] {
            let (a, b) = (f(&base, t).unwrap(), f(&moved, t).unwrap());
            prop_assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
        let (bs, ms) = (base.with_code(&OstbcCode::siso()), moved.with_code(&OstbcCode::siso()));
        prop_assert!((coverage_sc(&bs, t).unwrap() - coverage_sc(&ms, t).unwrap()).abs() < 1e-6);
    }
}
