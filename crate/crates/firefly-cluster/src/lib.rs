//! Deterministic, seedable spatial clustering built around a modified
//! firefly algorithm.
//!
//! The toolkit clusters 2D (and generally D-dimensional) point fields with
//! a navigation-aware objective: a weighted, normalized blend of cluster
//! compactness, centroid separation and a per-cluster TSP tour penalty, so
//! the chosen clusters are cheap to traverse. It provides:
//!
//! - fixed-K clustering with the canonical firefly algorithm ([`fa`]),
//! - automatic cluster-count selection with variable-length fireflies,
//!   nearest-centroid matched movement, probabilistic add/remove of
//!   centroids and snap-to-dataset repair ([`auto`]),
//! - K-Means, WCSS curves and automated elbow detection as baselines
//!   ([`kmeans`]),
//! - nearest-neighbor and Ant Colony System tour solvers for route
//!   evaluation ([`tsp`]),
//! - convex-hull cluster boundaries ([`hull`]),
//! - synthetic dataset generators ([`synth`]) and JSON/SVG reporting
//!   ([`report`]).
//!
//! Everything is driven by explicit seeds through [`rng::RngStream`]; a
//! run is a pure function of its configuration and seed.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `firefly-cluster` binary for the batch CLI.

pub mod auto;
pub mod compare;
pub mod data;
pub mod error;
pub mod fa;
pub mod fitness;
pub mod hull;
pub mod kmeans;
pub mod report;
pub mod rng;
pub mod synth;
pub mod tsp;

pub use auto::{auto_cluster, find_clusters, AutoKParams, RunResult};
pub use data::{assign, nearest_centroid, Dataset, Firefly, Partition, Point};
pub use error::{Error, Result};
pub use fa::{run_fixed_k, wcss, FaParams, FixedKResult};
pub use fitness::{
    default_bounds, evaluate, FitnessBreakdown, FitnessWeights, NormalizationBounds,
    SeparationTerm,
};
pub use hull::{convex_hull, Hull};
pub use kmeans::{elbow_point, kmeans, wcss_curve, CurveAlgo, CurveParams, KmeansResult};
pub use report::{Report, render_svg};
pub use rng::RngStream;
pub use tsp::{acs_tour, brute_force_tour, cluster_route_total, nn_tour, AcsParams, Route,
    RouteMethod, RouteTotals};
