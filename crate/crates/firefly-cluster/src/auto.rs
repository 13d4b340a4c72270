//! Automatic-K clustering with variable-length fireflies.
//!
//! Fireflies carry different centroid counts. Movement matches each centroid
//! of the dimmer firefly to its nearest centroid in the brighter one and
//! pulls it along that segment. After movement the centroid count is
//! probabilistically adjusted (add/remove, probability interpolated over
//! generations) and every centroid is snapped back onto the nearest dataset
//! point, so reported centroids are always actual locations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{assign, Dataset, Firefly, Point};
use crate::error::{Error, Result};
use crate::fa::{decay_alpha, wcss, FaParams};
use crate::fitness::{
    evaluate, FitnessBreakdown, FitnessWeights, NormalizationBounds, SeparationTerm,
};
use crate::rng::RngStream;

/// Parameters for automatic-K clustering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutoKParams {
    pub k_min: usize,
    pub k_max: usize,
    /// Add/remove mutation probability at generation 0.
    pub initial_prob: f64,
    /// Add/remove mutation probability at the final generation.
    pub final_prob: f64,
    pub num_runs: usize,
    pub fa: FaParams,
}

impl Default for AutoKParams {
    /// Defaults for automatic clustering: K in [2, 10], mutation probability
    /// 0.2 -> 0.1, 6 runs, alpha 0.5, gamma 1, delta 0.95, 250 generations,
    /// 15 fireflies.
    fn default() -> Self {
        Self {
            k_min: 2,
            k_max: 10,
            initial_prob: 0.2,
            final_prob: 0.1,
            num_runs: 6,
            fa: FaParams {
                alpha0: 0.5,
                max_gens: 250,
                ..FaParams::default()
            },
        }
    }
}

impl AutoKParams {
    pub fn validate(&self, data: &Dataset) -> Result<()> {
        self.fa.validate()?;
        if self.k_min < 2 || self.k_min > self.k_max {
            return Err(Error::InvalidParam("need 2 <= k_min <= k_max".into()));
        }
        if self.k_max > data.len() {
            return Err(Error::KOutOfRange {
                k: self.k_max,
                lo: self.k_min,
                hi: data.len(),
            });
        }
        if !(0.0..=1.0).contains(&self.initial_prob) || !(0.0..=1.0).contains(&self.final_prob) {
            return Err(Error::InvalidParam("probabilities must be in [0,1]".into()));
        }
        if self.initial_prob < self.final_prob {
            return Err(Error::InvalidParam(
                "initial_prob must be >= final_prob".into(),
            ));
        }
        if self.num_runs == 0 {
            return Err(Error::InvalidParam("num_runs must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one automatic-K run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunResult {
    pub best: Firefly,
    pub breakdown: FitnessBreakdown,
    pub k: usize,
    pub wcss: f64,
    /// Best-so-far fitness after each generation; non-increasing.
    pub history: Vec<f64>,
}

/// All runs plus the index of the selected (lowest-fitness) one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutoClusterResult {
    pub runs: Vec<RunResult>,
    pub selected: usize,
}

impl AutoClusterResult {
    pub fn best(&self) -> &RunResult {
        &self.runs[self.selected]
    }
}

/// Initial population: each firefly gets a uniform K in [k_min, k_max] and
/// K distinct data points as centroids.
pub fn init_population(data: &Dataset, p: &AutoKParams, rng: &mut RngStream) -> Vec<Firefly> {
    (0..p.fa.n_fireflies)
        .map(|_| {
            let k = rng.int_range(p.k_min, p.k_max);
            let idx = rng.sample_distinct(data.len(), k);
            Firefly::new(idx.iter().map(|&i| data.point(i).clone()).collect())
        })
        .collect()
}

/// Linear interpolation of the add/remove probability over generations.
pub fn adaptive_prob(gen: usize, max_gens: usize, p: &AutoKParams) -> f64 {
    if max_gens < 2 {
        return p.initial_prob;
    }
    p.initial_prob + (p.final_prob - p.initial_prob) * gen as f64 / (max_gens - 1) as f64
}

/// Move every centroid of `f1` toward its nearest centroid in the fitter
/// firefly `f2`. Matching is many-to-one; the centroid count of `f1` is
/// unchanged by this step.
pub fn move_toward_fitter(
    f1: &Firefly,
    f2: &Firefly,
    data: &Dataset,
    params: &FaParams,
    alpha_t: f64,
    rng: &mut RngStream,
) -> Firefly {
    let centroids = f1
        .centroids
        .iter()
        .map(|c| {
            let target = f2
                .centroids
                .iter()
                .min_by(|a, b| c.distance(a).total_cmp(&c.distance(b)))
                .expect("fitter firefly has at least one centroid");
            let r = c.distance(target);
            let beta = params.beta0 * (-params.gamma * r * r).exp();
            let coords = c
                .coords
                .iter()
                .zip(&target.coords)
                .enumerate()
                .map(|(d, (&ci, &ti))| {
                    let step = alpha_t * (rng.unit() - 0.5) * data.extent(d);
                    ((1.0 - beta) * ci + beta * ti + step)
                        .clamp(data.bbox_min()[d], data.bbox_max()[d])
                })
                .collect();
            Point::new(coords)
        })
        .collect();
    Firefly::new(centroids)
}

/// With probability `prob`, add or remove one centroid (fair coin). Adding
/// samples a data point not already a centroid; removing drops a uniformly
/// chosen centroid. A direction blocked by the K range falls through to the
/// other if legal, else the firefly is left unchanged.
pub fn adjust_k(
    f: &Firefly,
    data: &Dataset,
    prob: f64,
    p: &AutoKParams,
    rng: &mut RngStream,
) -> Firefly {
    if rng.unit() >= prob {
        return f.clone();
    }
    let want_add = rng.coin();
    let can_add = f.k() < p.k_max;
    let can_remove = f.k() > p.k_min;
    let add = match (want_add, can_add, can_remove) {
        (true, true, _) => true,
        (true, false, true) => false,
        (false, _, true) => false,
        (false, true, false) => true,
        _ => return f.clone(),
    };
    if add {
        let candidates: Vec<&Point> = data
            .points()
            .iter()
            .filter(|q| !f.centroids.contains(q))
            .collect();
        if candidates.is_empty() {
            return f.clone();
        }
        let mut centroids = f.centroids.clone();
        centroids.push(candidates[rng.index(candidates.len())].clone());
        Firefly::new(centroids)
    } else {
        let mut centroids = f.centroids.clone();
        centroids.remove(rng.index(centroids.len()));
        Firefly::new(centroids)
    }
}

/// Replace every centroid by the nearest dataset point, collapse duplicates
/// introduced by snapping and top back up to `k_min` with fresh distinct
/// data points if needed.
pub fn snap_to_data(f: &Firefly, data: &Dataset, k_min: usize, rng: &mut RngStream) -> Firefly {
    let mut centroids: Vec<Point> = Vec::with_capacity(f.k());
    for c in &f.centroids {
        let snapped = data.point(data.nearest_point_index(c)).clone();
        if !centroids.contains(&snapped) {
            centroids.push(snapped);
        }
    }
    while centroids.len() < k_min {
        let candidates: Vec<&Point> = data
            .points()
            .iter()
            .filter(|q| !centroids.contains(q))
            .collect();
        if candidates.is_empty() {
            break;
        }
        centroids.push(candidates[rng.index(candidates.len())].clone());
    }
    Firefly::new(centroids)
}

/// Reseed any centroid that owns zero points to a random data point.
fn repair_empty_clusters(f: &Firefly, data: &Dataset, rng: &mut RngStream) -> Firefly {
    let part = assign(data, f);
    if part.clusters.iter().all(|c| !c.is_empty()) {
        return f.clone();
    }
    let mut centroids: Vec<Point> = f.centroids.clone();
    for (k, members) in part.clusters.iter().enumerate() {
        if members.is_empty() {
            // reseed to a data point that is not already a centroid so the
            // firefly keeps distinct centroids
            let candidates: Vec<&Point> = data
                .points()
                .iter()
                .filter(|q| !centroids.contains(q))
                .collect();
            if !candidates.is_empty() {
                centroids[k] = candidates[rng.index(candidates.len())].clone();
            }
        }
    }
    Firefly::new(centroids)
}

/// One automatic-K run: the modified firefly loop with adaptive add/remove
/// and per-generation snapping.
pub fn find_clusters(
    data: &Dataset,
    p: &AutoKParams,
    w: &FitnessWeights,
    bounds: &NormalizationBounds,
    term: SeparationTerm,
    rng: &RngStream,
) -> Result<RunResult> {
    p.validate(data)?;
    let mut pop = init_population(data, p, &mut rng.derive(&[0]));
    let mut alpha_t = p.fa.alpha0;
    let mut best: Option<(Firefly, FitnessBreakdown)> = None;
    let mut history = Vec::with_capacity(p.fa.max_gens);

    for gen in 0..p.fa.max_gens {
        // empty-cluster repair before evaluation
        {
            let mut repair_rng = rng.derive(&[1, gen as u64]);
            for f in pop.iter_mut() {
                *f = repair_empty_clusters(f, data, &mut repair_rng);
            }
        }

        let fits: Vec<FitnessBreakdown> = pop
            .par_iter()
            .map(|f| evaluate(data, f, w, bounds, term))
            .collect();

        // rank the snapshot by fitness; best-so-far is stored by value and
        // never mutated afterwards
        let mut rank: Vec<usize> = (0..pop.len()).collect();
        rank.sort_by(|&a, &b| fits[a].total.total_cmp(&fits[b].total));
        let gen_best = rank[0];
        if best
            .as_ref()
            .is_none_or(|(_, b)| fits[gen_best].total < b.total)
        {
            best = Some((pop[gen_best].clone(), fits[gen_best]));
        }
        history.push(best.as_ref().unwrap().1.total);

        let prob = adaptive_prob(gen, p.fa.max_gens, p);
        let snapshot = pop.clone();
        for i in 0..pop.len() {
            let mut stream = rng.derive(&[2, gen as u64, i as u64]);
            let mut current = snapshot[i].clone();
            for &j in &rank {
                if fits[j].total < fits[i].total {
                    current =
                        move_toward_fitter(&current, &snapshot[j], data, &p.fa, alpha_t, &mut stream);
                }
            }
            current = adjust_k(&current, data, prob, p, &mut stream);
            current = snap_to_data(&current, data, p.k_min, &mut stream);
            pop[i] = current;
        }
        alpha_t = decay_alpha(alpha_t, p.fa.delta);
    }

    let (best, breakdown) = best.unwrap();
    let k = best.k();
    let wcss_val = wcss(data, &best);
    Ok(RunResult {
        best,
        breakdown,
        k,
        wcss: wcss_val,
        history,
    })
}

/// Run `find_clusters` `num_runs` times on independent derived streams and
/// select the run with the lowest total fitness.
pub fn auto_cluster(
    data: &Dataset,
    p: &AutoKParams,
    w: &FitnessWeights,
    bounds: &NormalizationBounds,
    term: SeparationTerm,
    seed: u64,
) -> Result<AutoClusterResult> {
    p.validate(data)?;
    let root = RngStream::new(seed, 0);
    let runs: Vec<Result<RunResult>> = (0..p.num_runs)
        .into_par_iter()
        .map(|r| find_clusters(data, p, w, bounds, term, &root.derive(&[r as u64])))
        .collect();
    let runs: Vec<RunResult> = runs.into_iter().collect::<Result<_>>()?;
    let selected = runs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.breakdown.total.total_cmp(&b.breakdown.total))
        .map(|(i, _)| i)
        .unwrap();
    Ok(AutoClusterResult { runs, selected })
}
