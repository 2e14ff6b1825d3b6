//! Association, distance density and interference moments.

use hetdiv_core::quad::{integrate, QuadConfig};
use hetdiv_hetnet::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn pdf_mass(net: &NetworkConfig, l: usize) -> f64 {
    let pc = PathLossCoupling::new(net, l).unwrap();
    let y_max = pc.y_at_envelope(80.0);
    let a = association_probability(net, l).unwrap();
    let lambda = net.tier(l).density;
    // Integrate the density without re-solving A for every point.
    integrate(
        |y| 2.0 * PI * lambda * y * (-pc.envelope(y)).exp() / a,
        0.0,
        y_max,
        &QuadConfig::new(0.0, 1e-13),
    )
    .value
}

#[test]
fn equal_alpha_association_closed_form() {
    let net = presets::equal_alpha(3.7, OstbcCode::alamouti(), 2);
    let w: Vec<f64> = net
        .tiers()
        .iter()
        .map(|t| t.density * t.power.powf(2.0 / 3.7))
        .collect();
    let total: f64 = w.iter().sum();
    for l in 0..3 {
        let a = association_probability(&net, l).unwrap();
        assert!((a - w[l] / total).abs() < 1e-11, "tier {l}: {a} vs {}", w[l] / total);
    }
}

#[test]
fn reference_network_association_sums_to_one() {
    let net = presets::table2(2, Some(presets::REFERENCE_NOISE_DBM));
    let a = association_probabilities(&net).unwrap();
    assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    for l in 0..3 {
        assert!((pdf_mass(&net, l) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn single_tier_distance_density_is_rayleigh() {
    let net = presets::single_tier(4.0, OstbcCode::siso(), 1);
    let lambda = net.tier(0).density;
    for &y in &[10.0, 100.0, 178.0, 400.0] {
        let want = 2.0 * PI * lambda * y * (-PI * lambda * y * y).exp();
        assert!((serving_distance_pdf(&net, 0, y).unwrap() / want - 1.0).abs() < 1e-11);
    }
    // Mode at 1/sqrt(2πλ).
    let mode = 1.0 / (2.0 * PI * lambda).sqrt();
    let f = |y| serving_distance_pdf(&net, 0, y).unwrap();
    assert!(f(mode) > f(mode * 0.99) && f(mode) > f(mode * 1.01));
}

#[test]
fn conditional_variance_plug_in() {
    let net = presets::single_tier(4.0, OstbcCode::siso(), 2);
    let lambda = net.tier(0).density;
    let y = 120.0;
    let ctx = ServingContext::new(&net, 0, y).unwrap();
    let v = interference_variance_conditional(&net, &ctx);
    assert!((v / (PI * lambda * (2.0 / 3.0) * y * y) - 1.0).abs() < 1e-14);
    let c = interference_covariance_conditional(&net, &ctx);
    assert!((c / v - interference_correlation(1)).abs() < 1e-14);
    let ctx0 = ServingContext::new(&net, 0, 0.0).unwrap();
    assert_eq!(interference_variance_conditional(&net, &ctx0), 0.0);
}

#[test]
fn deconditioned_variance_matches_closed_form() {
    // Average the conditional variance over association and distance.
    for (alpha, code) in [(3.7, OstbcCode::siso()), (4.0, OstbcCode::alamouti()), (3.2, OstbcCode::ostbc4_three_quarter())] {
        let s = code.s_active();
        let net = presets::equal_alpha(alpha, code, 2);
        let mut total = 0.0;
        for l in 0..net.num_tiers() {
            let pc = PathLossCoupling::new(&net, l).unwrap();
            let lambda = net.tier(l).density;
            let y_max = pc.y_at_envelope(80.0);
            total += integrate(
                |y| {
                    let ctx = ServingContext::new(&net, l, y).unwrap();
                    2.0 * PI * lambda * y * (-pc.envelope(y)).exp() * interference_variance_conditional(&net, &ctx)
                },
                0.0,
                y_max,
                &QuadConfig::new(0.0, 1e-12),
            )
            .value;
        }
        let want = interference_variance(alpha, s).unwrap();
        assert!((total - want).abs() < 1e-6, "alpha {alpha}: {total} vs {want}");
    }
}

fn arb_network() -> impl Strategy<Value = NetworkConfig> {
    let tier = (
        -1.0f64..2.0,
        0.0f64..50.0,
        2.2f64..5.5,
        prop_oneof![
            Just(OstbcCode::siso()),
            Just(OstbcCode::alamouti()),
            Just(OstbcCode::ostbc4_half()),
            Just(OstbcCode::ostbc4_three_quarter())
        ],
    )
        .prop_map(|(ld, pdbm, a, c)| {
            TierConfig::new(units::per_km2_to_per_m2(10f64.powf(ld)), units::dbm_to_watts(pdbm), a, c).unwrap()
        });
    (proptest::collection::vec(tier, 1..=5), 1u32..=4)
        .prop_map(|(t, n)| NetworkConfig::new(t, n, 0.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn association_probabilities_sum_to_one(net in arb_network()) {
        let a = association_probabilities(&net).unwrap();
        prop_assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-9, "{:?}", a);
        prop_assert!(a.iter().all(|p| *p >= 0.0));
    }

    #[test]
    fn distance_density_normalized(net in arb_network(), l in 0usize..5) {
        let l = l % net.num_tiers();
        prop_assert!((pdf_mass(&net, l) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn conditional_variance_is_additive_over_tiers(net in arb_network(), y in 1.0f64..500.0) {
        let ctx = ServingContext::new(&net, 0, y).unwrap();
        let whole = interference_variance_conditional(&net, &ctx);
        // Each tier alone, keeping the serving tier's reference power and α.
        let mut parts = 0.0;
        for k in 0..net.num_tiers() {
            let t = net.tier(k);
            let sub = NetworkConfig::new(vec![net.tier(0).clone(), t.clone()], net.rx_antennas(), 0.0).unwrap();
            let sctx = ServingContext::new(&sub, 0, y).unwrap();
            let only_k = ServingContext {
                rel_power: vec![sctx.rel_power[1]],
                rel_alpha: vec![sctx.rel_alpha[1]],
                excl_radius: vec![sctx.excl_radius[1]],
                ..sctx
            };
            let single = NetworkConfig::new(vec![t.clone()], net.rx_antennas(), 0.0).unwrap();
            parts += interference_variance_conditional(&single, &only_k);
        }
        prop_assert!((whole - parts).abs() <= 1e-12 * whole);
    }

    #[test]
    fn conditional_variance_increases_with_distance(net in arb_network(), y in 1.0f64..500.0, dy in 0.1f64..50.0) {
        let v1 = interference_variance_conditional(&net, &ServingContext::new(&net, 0, y).unwrap());
        let v2 = interference_variance_conditional(&net, &ServingContext::new(&net, 0, y + dy).unwrap());
        prop_assert!(v2 > v1);
    }

    #[test]
    fn rate_adjustment_only_raises_threshold(t in 1e-3f64..1e3) {
        prop_assert_eq!(rate_adjusted_threshold(t, &OstbcCode::alamouti()), t);
        prop_assert!(rate_adjusted_threshold(t, &OstbcCode::ostbc4_three_quarter()) > t);
    }
}
