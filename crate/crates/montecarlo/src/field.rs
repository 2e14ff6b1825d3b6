use crate::geometry::{drop_tier, Geometry};
use hetdiv_hetnet::NetworkConfig;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::FRAC_1_SQRT_2;

/// A `CN(0, 1)` sample.
pub(crate) fn cn01<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

pub(crate) fn cn01_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| cn01(rng)).collect()
}

/// One interfering base station as seen by the typical user.
#[derive(Debug, Clone, PartialEq)]
pub struct Interferer {
    pub tier: usize,
    pub distance: f64,
    /// Received power per active antenna, `P_k / (S_k r^{α_k})`.
    pub power: f64,
    /// Position of the user's first slot within this BS's codeword stream.
    pub offset: usize,
    /// `N × M_k` channel, row-major.
    pub h: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceField {
    pub n_rx: usize,
    pub interferers: Vec<Interferer>,
}

impl InterferenceField {
    fn from_distances<R: Rng>(net: &NetworkConfig, bs: impl Iterator<Item = (usize, f64)>, rng: &mut R) -> Self {
        let n_rx = net.rx_antennas() as usize;
        let interferers = bs
            .map(|(k, r)| {
                let t = net.tier(k);
                let m = t.m_tx() as usize;
                Interferer {
                    tier: k,
                    distance: r,
                    power: t.power / (t.s_active() as f64 * r.powf(t.path_loss_exp)),
                    offset: rng.random_range(0..t.code.codeword_len() as usize),
                    h: cn01_vec(rng, n_rx * m),
                }
            })
            .collect();
        Self { n_rx, interferers }
    }

    /// Interference power at each receive antenna, averaged over `window`
    /// slots starting at the user's first slot.
    pub fn per_antenna(&self, net: &NetworkConfig, window: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_rx];
        for it in &self.interferers {
            let code = &net.tier(it.tier).code;
            let pattern = code.activation_pattern();
            let m = code.m_tx() as usize;
            let len = pattern.len();
            for tau in 0..window {
                let active = &pattern[(it.offset + tau) % len];
                for (n, o) in out.iter_mut().enumerate() {
                    let row = &it.h[n * m..(n + 1) * m];
                    let g: f64 = row.iter().zip(active).filter(|(_, a)| **a).map(|(h, _)| h.norm_sqr()).sum();
                    *o += it.power * g;
                }
            }
        }
        out.iter_mut().for_each(|v| *v /= window as f64);
        out
    }

    /// Mean squared envelope of the received interference over `resources`
    /// resources with fresh unit-power symbols on every active antenna.
    pub fn estimate_averaged<R: Rng>(&self, net: &NetworkConfig, resources: usize, rng: &mut R) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_rx];
        let mut z = vec![Complex64::new(0.0, 0.0); self.n_rx];
        for r in 0..resources {
            z.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            for it in &self.interferers {
                let code = &net.tier(it.tier).code;
                let pattern = code.activation_pattern();
                let m = code.m_tx() as usize;
                let active = &pattern[(it.offset + r) % pattern.len()];
                let amp = it.power.sqrt();
                for (a, _) in active.iter().enumerate().filter(|(_, a)| **a) {
                    let s = cn01(rng) * amp;
                    for (n, zn) in z.iter_mut().enumerate() {
                        *zn += it.h[n * m + a] * s;
                    }
                }
            }
            for (a, zn) in acc.iter_mut().zip(&z) {
                *a += zn.norm_sqr();
            }
        }
        acc.iter_mut().for_each(|v| *v /= resources as f64);
        acc
    }
}

/// Fresh channels and slot offsets for every non-serving BS of `geom`.
pub fn sample_interference<R: Rng>(geom: &Geometry, net: &NetworkConfig, rng: &mut R) -> InterferenceField {
    InterferenceField::from_distances(net, geom.interferers(), rng)
}

/// An independent interferer field with the same association: every tier
/// is redropped and BSs that would beat the serving BS are removed.
pub fn sample_conditional_field<R: Rng>(
    geom: &Geometry,
    net: &NetworkConfig,
    mean_bs: u32,
    rng: &mut R,
) -> InterferenceField {
    let serving = net.tier(geom.serving_tier);
    let level = serving.power.ln() - serving.path_loss_exp * geom.y.ln();
    let drops: Vec<(usize, f64)> = net
        .tiers()
        .iter()
        .enumerate()
        .flat_map(|(k, t)| {
            drop_tier(rng, mean_bs, t.density)
                .into_iter()
                .filter(move |&r| t.power.ln() - t.path_loss_exp * r.ln() < level)
                .map(move |r| (k, r))
        })
        .collect();
    InterferenceField::from_distances(net, drops.into_iter(), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hetdiv_hetnet::{presets, OstbcCode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn averaged_estimate_tracks_genie_power() {
        let net = presets::single_tier(3.7, OstbcCode::alamouti(), 2);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let g = crate::sample_geometry(&net, 100, &mut rng).unwrap();
        let f = sample_interference(&g, &net, &mut rng);
        let genie = f.per_antenna(&net, 2);
        let est = f.estimate_averaged(&net, 20000, &mut rng);
        for (a, b) in genie.iter().zip(&est) {
            assert!((a / b - 1.0).abs() < 0.05, "{a} vs {b}");
        }
    }

    #[test]
    fn conditional_field_respects_association() {
        let net = presets::table2(2, None);
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let g = crate::sample_geometry(&net, 100, &mut rng).unwrap();
        let f = sample_conditional_field(&g, &net, 100, &mut rng);
        let s = net.tier(g.serving_tier);
        let p = s.power * g.y.powf(-s.path_loss_exp);
        for it in &f.interferers {
            let t = net.tier(it.tier);
            assert!(t.power * it.distance.powf(-t.path_loss_exp) < p);
        }
    }
}
