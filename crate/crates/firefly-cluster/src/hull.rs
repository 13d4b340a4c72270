//! 2D convex hulls for cluster boundary reporting (monotone chain).

use serde::{Deserialize, Serialize};

use crate::data::Point;
use crate::error::{Error, Result};

/// Convex hull of a 2D point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hull {
    /// Strictly convex vertices in counter-clockwise order, starting from
    /// the lowest-x (then lowest-y) vertex. Degenerate inputs yield 1
    /// (single point) or 2 (collinear set) vertices.
    pub vertices: Vec<Point>,
    /// Shoelace area; 0 for degenerate hulls.
    pub area: f64,
}

fn cross(o: &Point, a: &Point, b: &Point) -> f64 {
    (a.coords[0] - o.coords[0]) * (b.coords[1] - o.coords[1])
        - (a.coords[1] - o.coords[1]) * (b.coords[0] - o.coords[0])
}

/// Andrew's monotone chain. Collinear points on the boundary are dropped so
/// the vertex list is strictly convex.
pub fn convex_hull(points: &[Point]) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::InvalidParam("convex hull needs at least one point".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != 2) {
        return Err(Error::HullNot2D(p.dim()));
    }

    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_by(|a, b| {
        a.coords[0]
            .total_cmp(&b.coords[0])
            .then(a.coords[1].total_cmp(&b.coords[1]))
    });
    sorted.dedup();

    if sorted.len() == 1 {
        return Ok(Hull {
            vertices: sorted,
            area: 0.0,
        });
    }

    let mut lower: Vec<Point> = Vec::new();
    for p in &sorted {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);

    if vertices.len() < 2 {
        // fully collinear input: keep the two extreme points
        vertices = vec![sorted[0].clone(), sorted[sorted.len() - 1].clone()];
    }

    let area = shoelace(&vertices);
    Ok(Hull { vertices, area })
}

fn shoelace(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    if n < 3 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        sum += a.coords[0] * b.coords[1] - b.coords[0] * a.coords[1];
    }
    sum.abs() / 2.0
}

/// True if `p` lies inside or on the hull (tolerance 1e-9).
pub fn contains(hull: &Hull, p: &Point) -> bool {
    match hull.vertices.len() {
        0 => false,
        1 => hull.vertices[0].distance(p) < 1e-9,
        2 => {
            let (a, b) = (&hull.vertices[0], &hull.vertices[1]);
            cross(a, b, p).abs() < 1e-9
                && p.coords[0] >= a.coords[0].min(b.coords[0]) - 1e-9
                && p.coords[0] <= a.coords[0].max(b.coords[0]) + 1e-9
                && p.coords[1] >= a.coords[1].min(b.coords[1]) - 1e-9
                && p.coords[1] <= a.coords[1].max(b.coords[1]) + 1e-9
        }
        n => (0..n).all(|i| cross(&hull.vertices[i], &hull.vertices[(i + 1) % n], p) >= -1e-9),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn square_with_center() {
        let pts: Vec<Point> = vec![
            (0.0, 0.0).into(),
            (1.0, 0.0).into(),
            (1.0, 1.0).into(),
            (0.0, 1.0).into(),
            (0.5, 0.5).into(),
        ];
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.vertices.len(), 4);
        assert!((hull.area - 1.0).abs() < 1e-12);
        // CCW starting from lowest-x/lowest-y
        assert_eq!(hull.vertices[0], Point::new(vec![0.0, 0.0]));
        assert_eq!(hull.vertices[1], Point::new(vec![1.0, 0.0]));
    }

    #[test]
    fn collinear_degenerates_to_endpoints() {
        let pts: Vec<Point> = (0..5).map(|i| (i as f64, 2.0 * i as f64).into()).collect();
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.vertices.len(), 2);
        assert_eq!(hull.area, 0.0);
        assert_eq!(hull.vertices[0], Point::new(vec![0.0, 0.0]));
        assert_eq!(hull.vertices[1], Point::new(vec![4.0, 8.0]));
    }

    #[test]
    fn single_point() {
        let hull = convex_hull(&[(3.0, 4.0).into()]).unwrap();
        assert_eq!(hull.vertices.len(), 1);
        assert_eq!(hull.area, 0.0);
    }

    #[test]
    fn rejects_non_2d() {
        let pts = vec![Point::new(vec![1.0, 2.0, 3.0])];
        assert!(matches!(convex_hull(&pts), Err(Error::HullNot2D(3))));
    }

    #[test]
    fn matches_brute_force_edge_test() {
        let mut rng = RngStream::new(19, 0);
        let pts: Vec<Point> = (0..200)
            .map(|_| (rng.range(0.0, 10.0), rng.range(0.0, 10.0)).into())
            .collect();
        let hull = convex_hull(&pts).unwrap();

        // O(n^3) halfplane oracle: a point is a hull vertex iff some edge
        // through it keeps all points on one side
        let mut expected: Vec<Point> = Vec::new();
        for a in &pts {
            let mut is_vertex = false;
            'edges: for b in &pts {
                if a == b {
                    continue;
                }
                let mut pos = false;
                let mut neg = false;
                for c in &pts {
                    let cr = cross(a, b, c);
                    if cr > 1e-9 {
                        pos = true;
                    } else if cr < -1e-9 {
                        neg = true;
                    }
                    if pos && neg {
                        continue 'edges;
                    }
                }
                is_vertex = true;
                break;
            }
            if is_vertex && !expected.contains(a) {
                expected.push(a.clone());
            }
        }
        let mut got = hull.vertices.clone();
        let key = |p: &Point| (p.coords[0], p.coords[1]);
        got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        expected.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        assert_eq!(got, expected);
    }

    #[test]
    fn hull_contains_all_inputs() {
        let mut rng = RngStream::new(23, 0);
        for _ in 0..20 {
            let pts: Vec<Point> = (0..50)
                .map(|_| (rng.range(-5.0, 5.0), rng.range(-5.0, 5.0)).into())
                .collect();
            let hull = convex_hull(&pts).unwrap();
            for p in &pts {
                assert!(contains(&hull, p));
            }
        }
    }

    #[test]
    fn hull_is_idempotent() {
        let mut rng = RngStream::new(29, 0);
        let pts: Vec<Point> = (0..100)
            .map(|_| (rng.range(0.0, 1.0), rng.range(0.0, 1.0)).into())
            .collect();
        let hull = convex_hull(&pts).unwrap();
        let again = convex_hull(&hull.vertices).unwrap();
        assert_eq!(hull, again);
    }
}
