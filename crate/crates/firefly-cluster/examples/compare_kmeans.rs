//! Route-aware comparison: automatic firefly clustering vs K-Means at the
//! same K, with per-cluster ACS tour distances.
//!
//! Run with: `cargo run --release --example compare_kmeans`

use firefly_cluster::compare::run_comparison;
use firefly_cluster::{default_bounds, AcsParams, AutoKParams, Dataset, FitnessWeights, SeparationTerm};
use firefly_cluster::synth::gen_blobs_with_corridors;

fn main() {
    let (points, _) = gen_blobs_with_corridors(3, 35, 0.6, 1, 30, 40.0, 8);
    let data = Dataset::from_points(points).unwrap();

    let cmp = run_comparison(
        &data,
        &AutoKParams::default(),
        &FitnessWeights::default(),
        &default_bounds(&data),
        SeparationTerm::Intent,
        &AcsParams::default(),
        8,
    )
    .unwrap();

    println!("selected k = {}", cmp.k);
    println!("{:<10} {:>12} {:>12}", "cluster", "firefly", "k-means");
    for i in 0..cmp.k {
        println!(
            "{:<10} {:>12.4} {:>12.4}",
            i, cmp.fa_cluster_distances[i], cmp.kmeans_cluster_distances[i]
        );
    }
    println!("{:<10} {:>12.4} {:>12.4}", "total", cmp.fa_total, cmp.kmeans_total);
    println!("\nWCSS: firefly {:.2}, k-means {:.2}", cmp.fa_wcss, cmp.kmeans_wcss);
}
