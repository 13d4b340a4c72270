//! Self-contained JSON reports and static SVG plots.
//!
//! A report embeds the full invocation (config + seed); re-running with
//! that config reproduces it bit-identically except for wall-clock timings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::auto::RunResult;
use crate::data::{Dataset, Partition, Point};
use crate::fitness::FitnessBreakdown;
use crate::hull::Hull;
use crate::tsp::RouteTotals;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invocation {
    pub command: String,
    pub seed: u64,
    /// Full effective configuration, flattened to JSON.
    pub config: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub path: Option<String>,
    pub n_points: usize,
    pub dim: usize,
    pub bbox_min: Vec<f64>,
    pub bbox_max: Vec<f64>,
    pub diameter: f64,
}

impl DatasetSummary {
    pub fn from_dataset(data: &Dataset, path: Option<String>) -> Self {
        Self {
            path,
            n_points: data.len(),
            dim: data.dim(),
            bbox_min: data.bbox_min().to_vec(),
            bbox_max: data.bbox_max().to_vec(),
            diameter: data.diameter(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub run: usize,
    pub k: usize,
    pub fitness: FitnessBreakdown,
    pub wcss: f64,
    pub centroids: Vec<Vec<f64>>,
}

impl RunSummary {
    pub fn from_run(run: usize, r: &RunResult) -> Self {
        Self {
            run,
            k: r.k,
            fitness: r.breakdown,
            wcss: r.wcss,
            centroids: r.best.centroids.iter().map(|c| c.coords.clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedSolution {
    pub k: usize,
    pub fitness: FitnessBreakdown,
    pub wcss: f64,
    pub centroids: Vec<Vec<f64>>,
}

/// Side-by-side ACS route comparison of FA and K-Means clusterings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub k: usize,
    pub fa_cluster_distances: Vec<f64>,
    pub fa_total: f64,
    pub kmeans_cluster_distances: Vec<f64>,
    pub kmeans_total: f64,
    pub fa_wcss: f64,
    pub kmeans_wcss: f64,
}

/// The toolkit's single report schema; subcommands fill the sections they
/// produce and leave the rest `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub invocation: Invocation,
    pub dataset: DatasetSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runs: Option<Vec<RunSummary>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub selected: Option<SelectedSolution>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub assignment: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hulls: Option<Vec<Hull>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub routes: Option<RouteTotals>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wcss_curve: Option<Vec<(usize, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elbow_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub comparison: Option<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub history: Option<Vec<f64>>,
    /// Wall-clock timing; the only field excluded from determinism.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(invocation: Invocation, dataset: DatasetSummary) -> Self {
        Self {
            invocation,
            dataset,
            runs: None,
            selected: None,
            assignment: None,
            hulls: None,
            routes: None,
            wcss_curve: None,
            elbow_k: None,
            comparison: None,
            history: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// JSON with the timing field removed, for determinism comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut clone = self.clone();
        clone.timing_ms = None;
        clone.to_json()
    }
}

const PALETTE: &[&str] = &[
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Render a 2D clustering as a static SVG: points colored by cluster, hull
/// polygons, centroid crosses and optional route polylines.
pub fn render_svg(
    data: &Dataset,
    part: &Partition,
    hulls: Option<&[Hull]>,
    routes: Option<&RouteTotals>,
) -> String {
    let size = 640.0;
    let margin = 40.0;
    let (min, max) = (data.bbox_min(), data.bbox_max());
    let span_x = (max[0] - min[0]).max(1e-12);
    let span_y = (max[1] - min[1]).max(1e-12);
    let scale = (size - 2.0 * margin) / span_x.max(span_y);
    let sx = |x: f64| margin + (x - min[0]) * scale;
    // flip y so the plot reads like a scatter chart
    let sy = |y: f64| size - margin - (y - min[1]) * scale;
    let color = |k: usize| PALETTE[k % PALETTE.len()];

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if let Some(hulls) = hulls {
        for (k, hull) in hulls.iter().enumerate() {
            if hull.vertices.len() < 2 {
                continue;
            }
            let pts: Vec<String> = hull
                .vertices
                .iter()
                .map(|p| format!("{:.2},{:.2}", sx(p.coords[0]), sy(p.coords[1])))
                .collect();
            svg.push_str(&format!(
                "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.12\" stroke=\"{}\" stroke-width=\"1\"/>\n",
                pts.join(" "),
                color(k),
                color(k)
            ));
        }
    }

    if let Some(routes) = routes {
        for route in &routes.routes {
            if route.order.len() < 2 {
                continue;
            }
            let mut pts: Vec<String> = route
                .order
                .iter()
                .map(|&i| {
                    let p = data.point(i);
                    format!("{:.2},{:.2}", sx(p.coords[0]), sy(p.coords[1]))
                })
                .collect();
            pts.push(pts[0].clone()); // close the tour
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\" stroke-dasharray=\"4 2\"/>\n",
                pts.join(" "),
                color(route.cluster)
            ));
        }
    }

    for (i, p) in data.points().iter().enumerate() {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>\n",
            sx(p.coords[0]),
            sy(p.coords[1]),
            color(part.assignment[i])
        ));
    }

    for (k, c) in part.centroids.centroids.iter().enumerate() {
        let (x, y) = (sx(c.coords[0]), sy(c.coords[1]));
        svg.push_str(&format!(
            "<path d=\"M {x0:.2} {y0:.2} L {x1:.2} {y1:.2} M {x0:.2} {y1:.2} L {x1:.2} {y0:.2}\" stroke=\"{col}\" stroke-width=\"2.5\"/>\n",
            x0 = x - 6.0,
            y0 = y - 6.0,
            x1 = x + 6.0,
            y1 = y + 6.0,
            col = color(k)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

/// Hulls for each cluster of a 2D partition; clusters with no members get
/// an empty-vertex placeholder so indices line up.
pub fn cluster_hulls(data: &Dataset, part: &Partition) -> crate::error::Result<Vec<Hull>> {
    part.clusters
        .iter()
        .map(|members| {
            if members.is_empty() {
                Ok(Hull {
                    vertices: Vec::new(),
                    area: 0.0,
                })
            } else {
                let pts: Vec<Point> = members.iter().map(|&i| data.point(i).clone()).collect();
                crate::hull::convex_hull(&pts)
            }
        })
        .collect()
}
