//! Core domain types: points, datasets, fireflies and partitions.
//!
//! A firefly is a candidate solution: an ordered list of K centroids. A
//! partition assigns every dataset point to its nearest centroid, ties going
//! to the lowest cluster index so assignment is a pure function.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact pairwise diameter is computed up to this many points; larger
/// datasets fall back to the bbox diagonal to keep ingestion O(n).
const EXACT_DIAMETER_LIMIT: usize = 2000;

/// A point in D-dimensional space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(vec![x, y])
    }
}

/// An immutable dataset with precomputed bounds and diameter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dataset {
    points: Vec<Point>,
    dim: usize,
    bbox_min: Vec<f64>,
    bbox_max: Vec<f64>,
    diameter: f64,
}

impl Dataset {
    /// Build a dataset from points, validating shape and degeneracy.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let dim = points[0].dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        let mut bbox_min = vec![f64::INFINITY; dim];
        let mut bbox_max = vec![f64::NEG_INFINITY; dim];
        for p in &points {
            for (d, &c) in p.coords.iter().enumerate() {
                bbox_min[d] = bbox_min[d].min(c);
                bbox_max[d] = bbox_max[d].max(c);
            }
        }
        let diameter = if points.len() <= EXACT_DIAMETER_LIMIT {
            let mut best: f64 = 0.0;
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    best = best.max(points[i].distance(&points[j]));
                }
            }
            best
        } else {
            bbox_min
                .iter()
                .zip(&bbox_max)
                .map(|(lo, hi)| (hi - lo) * (hi - lo))
                .sum::<f64>()
                .sqrt()
        };
        if diameter == 0.0 {
            return Err(Error::AllPointsIdentical);
        }
        Ok(Self {
            points,
            dim,
            bbox_min,
            bbox_max,
            diameter,
        })
    }

    /// Load a dataset from a text file: one point per line, whitespace- or
    /// comma-separated numbers, `#` lines ignored. Errors carry 1-based line
    /// numbers.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parse the point file format from a string.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut dim = None;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut coords = Vec::new();
            for token in trimmed.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let v: f64 = token.parse().map_err(|_| Error::BadToken {
                    line: line_no,
                    token: token.to_string(),
                })?;
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        line: line_no,
                        value: v,
                    });
                }
                coords.push(v);
            }
            match dim {
                None => dim = Some(coords.len()),
                Some(d) if d != coords.len() => {
                    return Err(Error::RaggedRow {
                        line: line_no,
                        expected: d,
                        found: coords.len(),
                    })
                }
                _ => {}
            }
            points.push(Point::new(coords));
        }
        Self::from_points(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bbox_min(&self) -> &[f64] {
        &self.bbox_min
    }

    pub fn bbox_max(&self) -> &[f64] {
        &self.bbox_max
    }

    /// Per-dimension bbox extent, used to scale random movement steps.
    pub fn extent(&self, d: usize) -> f64 {
        self.bbox_max[d] - self.bbox_min[d]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Index of the dataset point nearest to `p`, ties to the lowest index.
    pub fn nearest_point_index(&self, p: &Point) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, q) in self.points.iter().enumerate() {
            let d = p.distance(q);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }
}

/// A candidate solution: an ordered list of K centroids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Firefly {
    pub centroids: Vec<Point>,
}

impl Firefly {
    pub fn new(centroids: Vec<Point>) -> Self {
        Self { centroids }
    }

    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn dim(&self) -> usize {
        self.centroids.first().map_or(0, Point::dim)
    }
}

/// Assignment of every dataset point to exactly one cluster.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Partition {
    /// Per-point cluster index in [0, K).
    pub assignment: Vec<usize>,
    /// Per-cluster member point indices; mutually exclusive, jointly
    /// exhaustive. Empty clusters are permitted at this layer.
    pub clusters: Vec<Vec<usize>>,
    /// The centroids that induced the assignment.
    pub centroids: Firefly,
}

impl Partition {
    pub fn k(&self) -> usize {
        self.clusters.len()
    }
}

/// Index of the centroid of `f` nearest to `p`, ties to the lowest index.
pub fn nearest_centroid(p: &Point, f: &Firefly) -> usize {
    debug_assert!(f.k() >= 1);
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in f.centroids.iter().enumerate() {
        let d = p.distance(c);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Assign every point of `data` to its nearest centroid of `f`.
pub fn assign(data: &Dataset, f: &Firefly) -> Partition {
    let mut assignment = Vec::with_capacity(data.len());
    let mut clusters = vec![Vec::new(); f.k()];
    for (i, p) in data.points().iter().enumerate() {
        let c = nearest_centroid(p, f);
        assignment.push(c);
        clusters[c].push(i);
    }
    Partition {
        assignment,
        clusters,
        centroids: f.clone(),
    }
}
