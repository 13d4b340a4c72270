//! Synthetic dataset generators for desk-scale experiments: Gaussian blob
//! fields, uniform fields and blob-plus-corridor layouts.

use rand_distr::{Distribution, Normal};

use crate::data::Point;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Gaussian blobs on a ring inside a square box of side `box_size`.
/// Blob centers are evenly spaced so their pairwise distance scales with
/// the box, and each blob holds `points_per_blob` samples with standard
/// deviation `sigma` per axis. Returns points and ground-truth labels.
pub fn gen_blobs(
    n_blobs: usize,
    points_per_blob: usize,
    sigma: f64,
    box_size: f64,
    seed: u64,
) -> (Vec<Point>, Vec<usize>) {
    let centers = blob_centers(n_blobs, box_size);
    let mut rng = RngStream::new(seed, 0);
    let normal = Normal::new(0.0, sigma.max(f64::MIN_POSITIVE)).unwrap();
    let mut points = Vec::with_capacity(n_blobs * points_per_blob);
    let mut labels = Vec::with_capacity(n_blobs * points_per_blob);
    for (b, (cx, cy)) in centers.iter().enumerate() {
        for _ in 0..points_per_blob {
            let (dx, dy) = if sigma == 0.0 {
                (0.0, 0.0)
            } else {
                (normal.sample(&mut rng), normal.sample(&mut rng))
            };
            points.push((cx + dx, cy + dy).into());
            labels.push(b);
        }
    }
    (points, labels)
}

/// Evenly spaced blob centers on a circle centered in the box, radius 40%
/// of the box side. Spacing between neighbors is >= 0.6 * radius for up to
/// ~10 blobs.
pub fn blob_centers(n_blobs: usize, box_size: f64) -> Vec<(f64, f64)> {
    let c = box_size / 2.0;
    let r = 0.4 * box_size;
    (0..n_blobs)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n_blobs.max(1) as f64;
            (c + r * theta.cos(), c + r * theta.sin())
        })
        .collect()
}

/// Uniform random field of `n` points in a square box.
pub fn gen_uniform(n: usize, box_size: f64, seed: u64) -> Vec<Point> {
    let mut rng = RngStream::new(seed, 1);
    (0..n)
        .map(|_| (rng.range(0.0, box_size), rng.range(0.0, box_size)).into())
        .collect()
}

/// Structured field mixing compact blobs with narrow corridors: each
/// corridor is an elongated strip of points. Returns points and labels
/// (blobs first, then corridors).
pub fn gen_blobs_with_corridors(
    n_blobs: usize,
    points_per_blob: usize,
    sigma: f64,
    n_corridors: usize,
    points_per_corridor: usize,
    box_size: f64,
    seed: u64,
) -> (Vec<Point>, Vec<usize>) {
    let (mut points, mut labels) = gen_blobs(n_blobs, points_per_blob, sigma, box_size, seed);
    let mut rng = RngStream::new(seed, 2);
    let normal = Normal::new(0.0, sigma.max(f64::MIN_POSITIVE)).unwrap();
    for c in 0..n_corridors {
        // corridors run horizontally at staggered heights
        let y = box_size * (c + 1) as f64 / (n_corridors + 1) as f64;
        let x0 = 0.1 * box_size;
        let x1 = 0.9 * box_size;
        for i in 0..points_per_corridor {
            let t = i as f64 / (points_per_corridor.max(2) - 1) as f64;
            let jitter = if sigma == 0.0 { 0.0 } else { normal.sample(&mut rng) };
            points.push((x0 + t * (x1 - x0), y + jitter).into());
            labels.push(n_blobs + c);
        }
    }
    (points, labels)
}

/// Serialize points to the toolkit's text format.
pub fn points_to_text(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        let row: Vec<String> = p.coords.iter().map(|c| format!("{c}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Validate generator arguments.
pub fn validate_gen(sigma: f64, box_size: f64) -> Result<()> {
    if sigma < 0.0 || !sigma.is_finite() {
        return Err(Error::InvalidParam("sigma must be finite and >= 0".into()));
    }
    if box_size <= 0.0 || !box_size.is_finite() {
        return Err(Error::InvalidParam("box size must be finite and > 0".into()));
    }
    Ok(())
}
