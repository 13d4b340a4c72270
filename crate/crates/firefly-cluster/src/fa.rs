//! Canonical firefly algorithm specialized to fixed-K clustering.
//!
//! Each firefly is a flat K*D vector of centroid coordinates. Movement
//! follows the standard attraction rule with a random step scaled by the
//! per-dimension bbox extent, and a multiplicative randomness decay per
//! generation. Updates are synchronous: every move in a generation reads
//! the pre-move snapshot, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{nearest_centroid, Dataset, Firefly};
use crate::error::{Error, Result};
use crate::fitness::{
    evaluate, FitnessBreakdown, FitnessWeights, NormalizationBounds, SeparationTerm,
};
use crate::rng::RngStream;

/// Firefly algorithm parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaParams {
    pub n_fireflies: usize,
    /// Initial randomness step.
    pub alpha0: f64,
    /// Attraction at distance 0.
    pub beta0: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    /// Per-generation randomness reduction factor.
    pub delta: f64,
    pub max_gens: usize,
}

impl Default for FaParams {
    /// Defaults for fixed-K clustering: 15 fireflies, alpha 0.3, gamma 1,
    /// delta 0.95, 100 generations.
    fn default() -> Self {
        Self {
            n_fireflies: 15,
            alpha0: 0.3,
            beta0: 1.0,
            gamma: 1.0,
            delta: 0.95,
            max_gens: 100,
        }
    }
}

impl FaParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_fireflies == 0 || self.max_gens == 0 {
            return Err(Error::InvalidParam(
                "need at least one firefly and one generation".into(),
            ));
        }
        if self.alpha0 < 0.0 || self.beta0 < 0.0 || self.gamma < 0.0 {
            return Err(Error::InvalidParam(
                "alpha0, beta0 and gamma must be >= 0".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::InvalidParam("delta must be in [0,1]".into()));
        }
        Ok(())
    }
}

/// Result of a fixed-K run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedKResult {
    pub best: Firefly,
    pub breakdown: FitnessBreakdown,
    pub wcss: f64,
    /// Best-so-far fitness after each generation; non-increasing.
    pub history: Vec<f64>,
}

/// One attraction step of firefly `x_i` toward `x_j`, both with the same K.
/// The random step is `alpha_t * (u - 0.5) * extent` per dimension and the
/// result is clamped to the dataset bbox.
pub fn move_firefly(
    x_i: &Firefly,
    x_j: &Firefly,
    data: &Dataset,
    params: &FaParams,
    alpha_t: f64,
    rng: &mut RngStream,
) -> Result<Firefly> {
    if x_i.k() != x_j.k() {
        return Err(Error::KMismatch {
            left: x_i.k(),
            right: x_j.k(),
        });
    }
    let r2: f64 = x_i
        .centroids
        .iter()
        .zip(&x_j.centroids)
        .flat_map(|(a, b)| a.coords.iter().zip(&b.coords))
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    let beta = params.beta0 * (-params.gamma * r2).exp();
    let centroids = x_i
        .centroids
        .iter()
        .zip(&x_j.centroids)
        .map(|(a, b)| {
            let coords = a
                .coords
                .iter()
                .zip(&b.coords)
                .enumerate()
                .map(|(d, (&ai, &bi))| {
                    let step = alpha_t * (rng.unit() - 0.5) * data.extent(d);
                    (ai + beta * (bi - ai) + step).clamp(data.bbox_min()[d], data.bbox_max()[d])
                })
                .collect();
            crate::data::Point::new(coords)
        })
        .collect();
    Ok(Firefly::new(centroids))
}

/// Multiplicative randomness decay.
pub fn decay_alpha(alpha_t: f64, delta: f64) -> f64 {
    alpha_t * delta
}

/// Within-cluster sum of squared point-to-nearest-centroid distances.
pub fn wcss(data: &Dataset, f: &Firefly) -> f64 {
    data.points()
        .iter()
        .map(|p| {
            let c = nearest_centroid(p, f);
            let d = p.distance(&f.centroids[c]);
            d * d
        })
        .sum()
}

/// Run the canonical FA with a fixed cluster count.
pub fn run_fixed_k(
    data: &Dataset,
    k: usize,
    params: &FaParams,
    w: &FitnessWeights,
    bounds: &NormalizationBounds,
    term: SeparationTerm,
    rng: &RngStream,
) -> Result<FixedKResult> {
    params.validate()?;
    if k < 1 || k > data.len() {
        return Err(Error::KOutOfRange {
            k,
            lo: 1,
            hi: data.len(),
        });
    }

    // initial fireflies sample K distinct data points each
    let mut init_rng = rng.derive(&[0]);
    let mut pop: Vec<Firefly> = (0..params.n_fireflies)
        .map(|_| {
            let idx = init_rng.sample_distinct(data.len(), k);
            Firefly::new(idx.iter().map(|&i| data.point(i).clone()).collect())
        })
        .collect();

    let mut alpha_t = params.alpha0;
    let mut best: Option<(Firefly, FitnessBreakdown)> = None;
    let mut history = Vec::with_capacity(params.max_gens);

    for gen in 0..params.max_gens {
        let fits: Vec<FitnessBreakdown> = pop
            .par_iter()
            .map(|f| evaluate(data, f, w, bounds, term))
            .collect();

        for (f, bd) in pop.iter().zip(&fits) {
            if best.as_ref().is_none_or(|(_, b)| bd.total < b.total) {
                best = Some((f.clone(), *bd));
            }
        }
        history.push(best.as_ref().unwrap().1.total);

        // snapshot fitness ranking drives the sweep order for j
        let mut rank: Vec<usize> = (0..pop.len()).collect();
        rank.sort_by(|&a, &b| fits[a].total.total_cmp(&fits[b].total));

        let snapshot = pop.clone();
        for i in 0..pop.len() {
            let mut stream = rng.derive(&[1, gen as u64, i as u64]);
            let mut current = snapshot[i].clone();
            for &j in &rank {
                if fits[j].total < fits[i].total {
                    current =
                        move_firefly(&current, &snapshot[j], data, params, alpha_t, &mut stream)?;
                }
            }
            pop[i] = current;
        }
        alpha_t = decay_alpha(alpha_t, params.delta);
    }

    let (best, breakdown) = best.unwrap();
    let wcss_val = wcss(data, &best);
    Ok(FixedKResult {
        best,
        breakdown,
        wcss: wcss_val,
        history,
    })
}
