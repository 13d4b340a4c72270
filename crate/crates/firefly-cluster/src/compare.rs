//! FA-vs-K-Means route comparison: cluster with both (K-Means at the K the
//! automatic FA selected), solve ACS tours per cluster, report per-cluster
//! and total distances side by side.

use crate::auto::{auto_cluster, AutoKParams};
use crate::data::{assign, Dataset};
use crate::error::Result;
use crate::fitness::{FitnessWeights, NormalizationBounds, SeparationTerm};
use crate::kmeans::{kmeans, DEFAULT_MAX_ITERS, DEFAULT_RESTARTS};
use crate::report::Comparison;
use crate::rng::RngStream;
use crate::tsp::{cluster_route_total, AcsParams, RouteMethod};

pub fn run_comparison(
    data: &Dataset,
    p: &AutoKParams,
    w: &FitnessWeights,
    bounds: &NormalizationBounds,
    term: SeparationTerm,
    acs: &AcsParams,
    seed: u64,
) -> Result<Comparison> {
    let auto = auto_cluster(data, p, w, bounds, term, seed)?;
    let best = auto.best();
    let k = best.k;

    let fa_part = assign(data, &best.best);
    let km = kmeans(
        data,
        k,
        DEFAULT_RESTARTS,
        DEFAULT_MAX_ITERS,
        &RngStream::new(seed, 1),
    )?;

    let route_rng = RngStream::new(seed, 2);
    let fa_routes = cluster_route_total(
        data,
        &fa_part,
        RouteMethod::Acs,
        acs,
        &route_rng.derive(&[0]),
    )?;
    let km_routes = cluster_route_total(
        data,
        &km.assignment,
        RouteMethod::Acs,
        acs,
        &route_rng.derive(&[1]),
    )?;

    Ok(Comparison {
        k,
        fa_cluster_distances: fa_routes.routes.iter().map(|r| r.length).collect(),
        fa_total: fa_routes.total,
        kmeans_cluster_distances: km_routes.routes.iter().map(|r| r.length).collect(),
        kmeans_total: km_routes.total,
        fa_wcss: best.wcss,
        kmeans_wcss: km.wcss,
    })
}
