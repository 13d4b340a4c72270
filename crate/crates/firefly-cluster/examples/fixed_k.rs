//! Fixed-K firefly clustering on a synthetic 3-blob field.
//!
//! Run with: `cargo run --example fixed_k`

use firefly_cluster::{
    assign, default_bounds, run_fixed_k, Dataset, FaParams, FitnessWeights, RngStream,
    SeparationTerm,
};
use firefly_cluster::synth::gen_blobs;

fn main() {
    let (points, _) = gen_blobs(3, 40, 0.6, 30.0, 42);
    let data = Dataset::from_points(points).unwrap();

    let params = FaParams::default(); // alpha0 = 0.3, 100 generations
    let weights = FitnessWeights::default();
    let bounds = default_bounds(&data);

    let result = run_fixed_k(
        &data,
        3,
        &params,
        &weights,
        &bounds,
        SeparationTerm::Intent,
        &RngStream::new(7, 0),
    )
    .unwrap();

    println!("fitness total: {:.6}", result.breakdown.total);
    println!("  compactness: {:.6}", result.breakdown.compactness_raw);
    println!("  separation:  {:.6}", result.breakdown.separation_raw);
    println!("  tsp penalty: {:.6}", result.breakdown.tsp_penalty_raw);
    println!("WCSS: {:.3}", result.wcss);

    let part = assign(&data, &result.best);
    for (k, c) in result.best.centroids.iter().enumerate() {
        println!(
            "cluster {k}: centroid ({:.2}, {:.2}), {} points",
            c.coords[0],
            c.coords[1],
            part.clusters[k].len()
        );
    }
}
