//! WCSS curve and automated elbow detection with the K-Means baseline.
//!
//! Run with: `cargo run --example elbow_method`

use firefly_cluster::{
    default_bounds, elbow_point, wcss_curve, CurveAlgo, CurveParams, Dataset, FaParams,
    FitnessWeights, RngStream, SeparationTerm,
};
use firefly_cluster::synth::gen_blobs;

fn main() {
    let (points, _) = gen_blobs(4, 40, 0.5, 40.0, 21);
    let data = Dataset::from_points(points).unwrap();

    let params = CurveParams {
        fa: FaParams::default(),
        weights: FitnessWeights::default(),
        bounds: default_bounds(&data),
        term: SeparationTerm::Intent,
        restarts: 10,
        max_iters: 300,
    };
    let curve = wcss_curve(
        &data,
        2,
        9,
        CurveAlgo::Kmeans,
        &params,
        &RngStream::new(21, 0),
    )
    .unwrap();

    let max = curve.iter().map(|&(_, w)| w).fold(f64::MIN, f64::max);
    for &(k, w) in &curve {
        let bar = "#".repeat((40.0 * w / max).round() as usize);
        println!("k = {k}: WCSS = {w:>10.2} {bar}");
    }

    let elbow = elbow_point(&curve).unwrap();
    println!("\nelbow at k = {elbow}");
}
