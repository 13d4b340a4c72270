//! K-Means baseline (Lloyd's algorithm with restarts), WCSS curves over K
//! ranges and automated elbow detection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{assign, Dataset, Firefly, Partition, Point};
use crate::error::{Error, Result};
use crate::fa::{run_fixed_k, wcss, FaParams};
use crate::fitness::{FitnessWeights, NormalizationBounds, SeparationTerm};
use crate::rng::RngStream;

pub const DEFAULT_RESTARTS: usize = 10;
pub const DEFAULT_MAX_ITERS: usize = 300;

/// Result of a K-Means fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KmeansResult {
    pub centroids: Firefly,
    pub assignment: Partition,
    pub wcss: f64,
    pub iterations_used: usize,
    /// Which restart produced the winning solution.
    pub restart_index: usize,
}

/// Lloyd's algorithm with random data-point initialization and restarts;
/// returns the restart with the lowest WCSS. Empty clusters are reseeded to
/// the point farthest from its currently assigned centroid.
pub fn kmeans(
    data: &Dataset,
    k: usize,
    restarts: usize,
    max_iters: usize,
    rng: &RngStream,
) -> Result<KmeansResult> {
    if k < 1 || k > data.len() {
        return Err(Error::KOutOfRange {
            k,
            lo: 1,
            hi: data.len(),
        });
    }
    if restarts == 0 || max_iters == 0 {
        return Err(Error::InvalidParam("restarts and max_iters must be >= 1".into()));
    }
    let results: Vec<(usize, usize, Firefly, Partition, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut stream = rng.derive(&[r as u64]);
            let (centroids, part, w, iters) = lloyd(data, k, max_iters, &mut stream);
            (r, iters, centroids, part, w)
        })
        .collect();
    let (restart_index, iterations_used, centroids, assignment, wcss) = results
        .into_iter()
        .min_by(|a, b| a.4.total_cmp(&b.4))
        .unwrap();
    Ok(KmeansResult {
        centroids,
        assignment,
        wcss,
        iterations_used,
        restart_index,
    })
}

fn lloyd(
    data: &Dataset,
    k: usize,
    max_iters: usize,
    rng: &mut RngStream,
) -> (Firefly, Partition, f64, usize) {
    let idx = rng.sample_distinct(data.len(), k);
    let mut centroids = Firefly::new(idx.iter().map(|&i| data.point(i).clone()).collect());
    let mut part = assign(data, &centroids);
    let mut iters = 0;
    for _ in 0..max_iters {
        iters += 1;
        let mut next: Vec<Point> = part
            .clusters
            .iter()
            .enumerate()
            .map(|(c, members)| {
                if members.is_empty() {
                    centroids.centroids[c].clone()
                } else {
                    mean_point(data, members)
                }
            })
            .collect();
        // reseed empty clusters to the point farthest from its assigned centroid
        for c in 0..k {
            if part.clusters[c].is_empty() {
                let far = (0..data.len())
                    .max_by(|&a, &b| {
                        let da = data.point(a).distance(&next[part.assignment[a]]);
                        let db = data.point(b).distance(&next[part.assignment[b]]);
                        da.total_cmp(&db)
                    })
                    .unwrap();
                next[c] = data.point(far).clone();
            }
        }
        let next = Firefly::new(next);
        let next_part = assign(data, &next);
        let converged = next_part.assignment == part.assignment && next == centroids;
        centroids = next;
        part = next_part;
        if converged {
            break;
        }
    }
    let w = wcss(data, &centroids);
    (centroids, part, w, iters)
}

fn mean_point(data: &Dataset, members: &[usize]) -> Point {
    let dim = data.dim();
    let mut coords = vec![0.0; dim];
    for &i in members {
        for (d, &c) in data.point(i).coords.iter().enumerate() {
            coords[d] += c;
        }
    }
    for c in coords.iter_mut() {
        *c /= members.len() as f64;
    }
    Point::new(coords)
}

/// Which algorithm a WCSS curve is computed with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveAlgo {
    Fa,
    Kmeans,
}

/// Per-algorithm parameters for [`wcss_curve`].
#[derive(Debug, Clone)]
pub struct CurveParams {
    pub fa: FaParams,
    pub weights: FitnessWeights,
    pub bounds: NormalizationBounds,
    pub term: SeparationTerm,
    pub restarts: usize,
    pub max_iters: usize,
}

/// Best WCSS per K over [k_lo, k_hi]. The curve is reported as-is; it is
/// usually non-increasing but not forced to be.
pub fn wcss_curve(
    data: &Dataset,
    k_lo: usize,
    k_hi: usize,
    algo: CurveAlgo,
    params: &CurveParams,
    rng: &RngStream,
) -> Result<Vec<(usize, f64)>> {
    if k_lo > k_hi || k_hi > data.len() {
        return Err(Error::KOutOfRange {
            k: k_hi,
            lo: k_lo,
            hi: data.len(),
        });
    }
    let mut curve = Vec::with_capacity(k_hi - k_lo + 1);
    for k in k_lo..=k_hi {
        let stream = rng.derive(&[k as u64]);
        let w = match algo {
            CurveAlgo::Kmeans => kmeans(data, k, params.restarts, params.max_iters, &stream)?.wcss,
            CurveAlgo::Fa => run_fixed_k(
                data,
                k,
                &params.fa,
                &params.weights,
                &params.bounds,
                params.term,
                &stream,
            )?
            .wcss,
        };
        curve.push((k, w));
    }
    Ok(curve)
}

/// Elbow of a WCSS curve: the K maximizing perpendicular distance to the
/// chord joining the curve endpoints. Ties go to the smaller K.
pub fn elbow_point(curve: &[(usize, f64)]) -> Result<usize> {
    if curve.len() < 3 {
        return Err(Error::ElbowTooFewPoints(curve.len()));
    }
    for w in curve.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::InvalidParam("curve K values must strictly increase".into()));
        }
    }
    let (x0, y0) = (curve[0].0 as f64, curve[0].1);
    let (x1, y1) = (curve[curve.len() - 1].0 as f64, curve[curve.len() - 1].1);
    let dx = x1 - x0;
    let dy = y1 - y0;
    let norm = (dx * dx + dy * dy).sqrt();
    let mut best_k = curve[1].0;
    let mut best_d = f64::NEG_INFINITY;
    for &(k, w) in &curve[1..curve.len() - 1] {
        let d = if norm == 0.0 {
            0.0
        } else {
            ((k as f64 - x0) * dy - (w - y0) * dx).abs() / norm
        };
        if d > best_d + 1e-12 {
            best_d = d;
            best_k = k;
        }
    }
    Ok(best_k)
}
