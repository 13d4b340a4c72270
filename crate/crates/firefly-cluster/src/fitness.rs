//! The clustering objective: weighted, normalized compactness + separation
//! + TSP penalty. Lower totals are fitter.
//!
//! Each raw term is normalized by a fixed per-dataset bound and clamped to
//! [0, 1]. The separation term defaults to rewarding spread-out centroids
//! via `1 - normalized_separation`; the literal orientation (adding the
//! normalized separation itself to the minimized total) is available for
//! fidelity experiments.

use serde::{Deserialize, Serialize};

use crate::data::{assign, Dataset, Firefly, Partition, Point};
use crate::error::{Error, Result};
use crate::tsp::nn_tour;

/// Weights for the three fitness terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessWeights {
    pub w_comp: f64,
    pub w_sep: f64,
    pub w_tsp: f64,
}

impl Default for FitnessWeights {
    fn default() -> Self {
        Self {
            w_comp: 1.0 / 3.0,
            w_sep: 1.0 / 3.0,
            w_tsp: 1.0 / 3.0,
        }
    }
}

impl FitnessWeights {
    pub fn new(w_comp: f64, w_sep: f64, w_tsp: f64) -> Result<Self> {
        if w_comp < 0.0 || w_sep < 0.0 || w_tsp < 0.0 {
            return Err(Error::InvalidParam("fitness weights must be >= 0".into()));
        }
        if w_comp + w_sep + w_tsp <= 0.0 {
            return Err(Error::InvalidParam("fitness weights must not all be 0".into()));
        }
        Ok(Self { w_comp, w_sep, w_tsp })
    }
}

/// How the separation term enters the minimized total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparationTerm {
    /// `w_sep * (1 - sep_norm)`: larger separation lowers the total.
    #[default]
    Intent,
    /// `w_sep * sep_norm`: the verbatim sum, which penalizes separation.
    PaperLiteral,
}

/// Fixed per-dataset normalization bounds for the three raw terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub max_compactness: f64,
    pub max_separation: f64,
    pub max_tsp_penalty: f64,
}

impl NormalizationBounds {
    pub fn new(max_compactness: f64, max_separation: f64, max_tsp_penalty: f64) -> Result<Self> {
        if max_compactness <= 0.0 || max_separation <= 0.0 || max_tsp_penalty <= 0.0 {
            return Err(Error::InvalidParam("normalization bounds must be > 0".into()));
        }
        Ok(Self {
            max_compactness,
            max_separation,
            max_tsp_penalty,
        })
    }
}

/// Raw and normalized fitness terms plus the weighted total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessBreakdown {
    pub compactness_raw: f64,
    pub compactness_norm: f64,
    pub separation_raw: f64,
    pub separation_norm: f64,
    pub tsp_penalty_raw: f64,
    pub tsp_penalty_norm: f64,
    pub total: f64,
}

/// Mean point-to-centroid distance, averaged over non-empty clusters.
/// Distances are taken to the stored centroid, not the member mean.
pub fn compactness(data: &Dataset, part: &Partition) -> f64 {
    let mut sum = 0.0;
    let mut nonempty = 0usize;
    for (k, members) in part.clusters.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let centroid = &part.centroids.centroids[k];
        let cluster_sum: f64 = members
            .iter()
            .map(|&i| data.point(i).distance(centroid))
            .sum();
        sum += cluster_sum / members.len() as f64;
        nonempty += 1;
    }
    if nonempty == 0 {
        0.0
    } else {
        sum / nonempty as f64
    }
}

/// Mean pairwise distance between centroids (unordered pairs).
pub fn separation(f: &Firefly) -> Result<f64> {
    let k = f.k();
    if k < 2 {
        return Err(Error::SeparationNeedsTwo(k));
    }
    let mut sum = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            sum += f.centroids[i].distance(&f.centroids[j]);
        }
    }
    Ok(sum / (k * (k - 1) / 2) as f64)
}

/// Sum over clusters of closed-tour length divided by ln(1 + |C_k|).
/// Clusters with fewer than 2 members contribute 0. `tour_fn` maps a
/// cluster's points to a closed-tour length.
pub fn tsp_penalty<F>(data: &Dataset, part: &Partition, mut tour_fn: F) -> f64
where
    F: FnMut(&[Point]) -> f64,
{
    let mut total = 0.0;
    for members in &part.clusters {
        if members.len() < 2 {
            continue;
        }
        let pts: Vec<Point> = members.iter().map(|&i| data.point(i).clone()).collect();
        total += tour_fn(&pts) / (1.0 + members.len() as f64).ln();
    }
    total
}

/// Closed nearest-neighbor tour length from index 0; the default tour
/// provider for the fitness penalty.
pub fn nn_tour_length(pts: &[Point]) -> f64 {
    match pts.len() {
        0 | 1 => 0.0,
        _ => nn_tour(pts, 0).expect("nn_tour on >= 2 points").length,
    }
}

/// Evaluate the full fitness of a firefly against a dataset.
pub fn evaluate(
    data: &Dataset,
    f: &Firefly,
    w: &FitnessWeights,
    b: &NormalizationBounds,
    term: SeparationTerm,
) -> FitnessBreakdown {
    let part = assign(data, f);
    evaluate_partition(data, &part, w, b, term)
}

/// Evaluate fitness from an already-computed partition.
pub fn evaluate_partition(
    data: &Dataset,
    part: &Partition,
    w: &FitnessWeights,
    b: &NormalizationBounds,
    term: SeparationTerm,
) -> FitnessBreakdown {
    let comp_raw = compactness(data, part);
    // K=1 fireflies appear only in tests and fixed-K edge cases; separation
    // is defined as 0 there.
    let sep_raw = separation(&part.centroids).unwrap_or(0.0);
    let tsp_raw = tsp_penalty(data, part, nn_tour_length);

    let comp_norm = (comp_raw / b.max_compactness).clamp(0.0, 1.0);
    let sep_norm = (sep_raw / b.max_separation).clamp(0.0, 1.0);
    let tsp_norm = (tsp_raw / b.max_tsp_penalty).clamp(0.0, 1.0);

    let sep_term = match term {
        SeparationTerm::Intent => 1.0 - sep_norm,
        SeparationTerm::PaperLiteral => sep_norm,
    };
    FitnessBreakdown {
        compactness_raw: comp_raw,
        compactness_norm: comp_norm,
        separation_raw: sep_raw,
        separation_norm: sep_norm,
        tsp_penalty_raw: tsp_raw,
        tsp_penalty_norm: tsp_norm,
        total: w.w_comp * comp_norm + w.w_sep * sep_term + w.w_tsp * tsp_norm,
    }
}

/// Default normalization bounds derived from the dataset geometry:
/// both distance terms are bounded by the diameter, the TSP penalty by
/// `n * diameter / ln 2` (worst case: every cluster a 2-point pair at
/// maximal distance).
pub fn default_bounds(data: &Dataset) -> NormalizationBounds {
    let d = data.diameter();
    NormalizationBounds {
        max_compactness: d,
        max_separation: d,
        max_tsp_penalty: data.len() as f64 * d / std::f64::consts::LN_2,
    }
}
