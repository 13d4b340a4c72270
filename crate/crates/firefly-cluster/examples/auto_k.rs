//! Automatic cluster-count selection with variable-length fireflies.
//!
//! Generates four well-separated blobs and lets the algorithm decide how
//! many clusters there are. Run with: `cargo run --release --example auto_k`

use firefly_cluster::{
    auto_cluster, default_bounds, AutoKParams, Dataset, FitnessWeights, SeparationTerm,
};
use firefly_cluster::synth::gen_blobs;

fn main() {
    let (points, _) = gen_blobs(4, 50, 0.5, 40.0, 1);
    let data = Dataset::from_points(points).unwrap();

    let params = AutoKParams::default(); // K in [2, 10], 6 runs, 250 generations
    let result = auto_cluster(
        &data,
        &params,
        &FitnessWeights::default(),
        &default_bounds(&data),
        SeparationTerm::Intent,
        12345,
    )
    .unwrap();

    for (i, run) in result.runs.iter().enumerate() {
        let marker = if i == result.selected { " <- selected" } else { "" };
        println!(
            "run {i}: k = {}, fitness = {:.6}{marker}",
            run.k, run.breakdown.total
        );
    }

    let best = result.best();
    println!("\nselected k = {} (fitness {:.6})", best.k, best.breakdown.total);
    for c in &best.best.centroids {
        println!("  centroid ({:.2}, {:.2})", c.coords[0], c.coords[1]);
    }
}
