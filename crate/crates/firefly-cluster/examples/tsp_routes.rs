//! Closed-tour route solvers: nearest-neighbor heuristic, Ant Colony
//! System, and the exact answer for a small instance.
//!
//! Run with: `cargo run --example tsp_routes`

use firefly_cluster::{acs_tour, brute_force_tour, nn_tour, AcsParams, Point, RngStream};
use firefly_cluster::synth::gen_uniform;

fn main() {
    // exact comparison is feasible on a small instance
    let small: Vec<Point> = gen_uniform(8, 10.0, 4);
    let nn = nn_tour(&small, 0).unwrap();
    let exact = brute_force_tour(&small).unwrap();
    let mut rng = RngStream::new(4, 0);
    let acs = acs_tour(&small, &AcsParams::default(), &mut rng).unwrap();
    println!("8 points:");
    println!("  nearest neighbor: {:.4}", nn.length);
    println!("  ant colony:       {:.4}", acs.length);
    println!("  exact optimum:    {:.4}", exact.length);

    // on a bigger instance ACS usually beats the greedy tour
    let big: Vec<Point> = gen_uniform(60, 100.0, 9);
    let nn = nn_tour(&big, 0).unwrap();
    let mut rng = RngStream::new(9, 0);
    let acs = acs_tour(&big, &AcsParams::default(), &mut rng).unwrap();
    println!("\n60 points:");
    println!("  nearest neighbor: {:.4}", nn.length);
    println!("  ant colony:       {:.4}", acs.length);
    println!("  tour order starts {:?} ...", &acs.order[..6.min(acs.order.len())]);
}
