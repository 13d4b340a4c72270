//! Convex-hull cluster boundaries plus an SVG plot written to disk.
//!
//! Run with: `cargo run --example convex_hulls`

use firefly_cluster::report::{cluster_hulls, render_svg};
use firefly_cluster::{assign, kmeans, Dataset, RngStream};
use firefly_cluster::synth::gen_blobs;

fn main() {
    let (points, _) = gen_blobs(3, 30, 0.7, 30.0, 6);
    let data = Dataset::from_points(points).unwrap();

    let km = kmeans(&data, 3, 10, 300, &RngStream::new(6, 0)).unwrap();
    let part = assign(&data, &km.centroids);
    let hulls = cluster_hulls(&data, &part).unwrap();

    for (k, hull) in hulls.iter().enumerate() {
        println!(
            "cluster {k}: {} hull vertices, area {:.3}",
            hull.vertices.len(),
            hull.area
        );
    }

    let svg = render_svg(&data, &part, Some(&hulls), None);
    let path = std::env::temp_dir().join("convex_hulls.svg");
    std::fs::write(&path, svg).unwrap();
    println!("\nwrote {}", path.display());
}
