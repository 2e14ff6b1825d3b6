use crate::config::disc_radius;
use crate::{Result, SimError};
use hetdiv_hetnet::NetworkConfig;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

// Consecutive empty drops before giving up; at 1 BS per tier and one tier
// the chance of reaching this is e^{-1000}.
const MAX_RESAMPLES: u32 = 1000;

/// Base-station distances of one drop and the serving BS.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    /// `distances[k]`: distances of the tier-k base stations.
    pub distances: Vec<Vec<f64>>,
    pub serving_tier: usize,
    pub serving_index: usize,
    /// Distance to the serving BS.
    pub y: f64,
    /// Number of drops discarded because no tier had a base station.
    pub resamples: u32,
}

impl Geometry {
    /// `(tier, distance)` of every base station except the serving one.
    pub fn interferers(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.distances.iter().enumerate().flat_map(move |(k, ds)| {
            ds.iter()
                .enumerate()
                .filter(move |&(i, _)| !(k == self.serving_tier && i == self.serving_index))
                .map(move |(_, &r)| (k, r))
        })
    }

    pub fn num_interferers(&self) -> usize {
        self.distances.iter().map(Vec::len).sum::<usize>() - 1
    }
}

/// Uniform points in a disc: `radius·sqrt(U)` has the right distance law.
pub(crate) fn drop_tier<R: Rng>(rng: &mut R, mean_bs: u32, density: f64) -> Vec<f64> {
    let radius = disc_radius(mean_bs, density);
    let count = Poisson::new(mean_bs as f64).expect("mean is positive").sample(rng) as usize;
    (0..count).map(|_| radius * rng.random::<f64>().sqrt()).collect()
}

/// Drops every tier and associates with the largest `P_k r^{−α_k}`.
pub fn sample_geometry<R: Rng>(net: &NetworkConfig, mean_bs: u32, rng: &mut R) -> Result<Geometry> {
    if mean_bs == 0 {
        return Err(SimError::Config("mean_bs_per_tier must be at least 1".into()));
    }
    for resamples in 0..MAX_RESAMPLES {
        let distances: Vec<Vec<f64>> = net
            .tiers()
            .iter()
            .map(|t| drop_tier(rng, mean_bs, t.density))
            .collect();
        let mut best: Option<(f64, usize, usize)> = None;
        for (k, ds) in distances.iter().enumerate() {
            let t = net.tier(k);
            for (i, &r) in ds.iter().enumerate() {
                // Compare in the log domain; r can be tiny.
                let score = t.power.ln() - t.path_loss_exp * r.ln();
                if best.is_none_or(|(b, _, _)| score > b) {
                    best = Some((score, k, i));
                }
            }
        }
        if let Some((_, k, i)) = best {
            let y = distances[k][i];
            return Ok(Geometry {
                distances,
                serving_tier: k,
                serving_index: i,
                y,
                resamples,
            });
        }
    }
    Err(SimError::Config(format!(
        "no base station in {MAX_RESAMPLES} consecutive drops; mean_bs_per_tier is too small"
    )))
}
