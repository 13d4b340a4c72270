//! Closed-tour length providers.
//!
//! The fitness penalty uses the cheap nearest-neighbor heuristic; final
//! route evaluation uses Ant Colony System. A brute-force enumerator over
//! (n-1)!/2 tours serves as the test oracle for small instances.

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Partition, Point};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A closed tour over a set of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    /// Visiting order as indices into the input point slice. The tour closes
    /// back from the last index to the first.
    pub order: Vec<usize>,
    /// Total closed-tour Euclidean length.
    pub length: f64,
}

impl Route {
    /// Recompute the closed-tour length from the order.
    pub fn recompute_length(&self, points: &[Point]) -> f64 {
        closed_length(points, &self.order)
    }
}

fn closed_length(points: &[Point], order: &[usize]) -> f64 {
    let n = order.len();
    (0..n)
        .map(|i| points[order[i]].distance(&points[order[(i + 1) % n]]))
        .sum()
}

/// Ant Colony System parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcsParams {
    pub n_ants: usize,
    pub n_iters: usize,
    /// Heuristic (inverse distance) exponent.
    pub beta: f64,
    /// Global evaporation rate.
    pub rho: f64,
    /// Local evaporation rate.
    pub phi: f64,
    /// Exploitation probability of the pseudo-random-proportional rule.
    pub q0: f64,
    /// Initial pheromone; `None` means 1/(n * L_nn).
    pub tau0: Option<f64>,
}

impl Default for AcsParams {
    fn default() -> Self {
        Self {
            n_ants: 10,
            n_iters: 200,
            beta: 2.0,
            rho: 0.1,
            phi: 0.1,
            q0: 0.9,
            tau0: None,
        }
    }
}

impl AcsParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_ants == 0 || self.n_iters == 0 {
            return Err(Error::InvalidParam("ACS needs ants and iterations > 0".into()));
        }
        if self.beta < 0.0 {
            return Err(Error::InvalidParam("ACS beta must be >= 0".into()));
        }
        if !(0.0..1.0).contains(&self.rho) || self.rho == 0.0 {
            return Err(Error::InvalidParam("ACS rho must be in (0,1)".into()));
        }
        if !(0.0..1.0).contains(&self.phi) || self.phi == 0.0 {
            return Err(Error::InvalidParam("ACS phi must be in (0,1)".into()));
        }
        if !(0.0..=1.0).contains(&self.q0) {
            return Err(Error::InvalidParam("ACS q0 must be in [0,1]".into()));
        }
        if let Some(t) = self.tau0 {
            if t <= 0.0 {
                return Err(Error::InvalidParam("ACS tau0 must be > 0".into()));
            }
        }
        Ok(())
    }
}

/// Greedy nearest-unvisited closed tour from `start`, ties to lowest index.
pub fn nn_tour(points: &[Point], start: usize) -> Result<Route> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TourTooSmall { min: 2, found: n });
    }
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut current = start;
    order.push(current);
    visited[current] = true;
    while order.len() < n {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (j, seen) in visited.iter().enumerate() {
            if !seen {
                let d = points[current].distance(&points[j]);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
        }
        current = best;
        order.push(current);
        visited[current] = true;
    }
    let length = closed_length(points, &order);
    Ok(Route { order, length })
}

/// Exact optimum by enumerating all (n-1)!/2 distinct closed tours.
pub fn brute_force_tour(points: &[Point]) -> Result<Route> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TourTooSmall { min: 2, found: n });
    }
    if n > 10 {
        return Err(Error::TourTooLarge { max: 10, found: n });
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best_order = {
        let mut o = vec![0];
        o.extend_from_slice(&rest);
        o
    };
    let mut best_len = closed_length(points, &best_order);
    permute(&mut rest, 0, &mut |perm| {
        // fix point 0 first and skip mirrored tours
        if n > 2 && perm[0] > perm[n - 2] {
            return;
        }
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend_from_slice(perm);
        let len = closed_length(points, &order);
        if len < best_len {
            best_len = len;
            best_order = order;
        }
    });
    Ok(Route {
        order: best_order,
        length: best_len,
    })
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Ant Colony System tour. Instances with fewer than 3 points delegate to
/// the nearest-neighbor tour.
pub fn acs_tour(points: &[Point], params: &AcsParams, rng: &mut RngStream) -> Result<Route> {
    params.validate()?;
    let n = points.len();
    if n < 3 {
        return nn_tour(points, 0);
    }

    let dist: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| points[i].distance(&points[j])).collect())
        .collect();
    // eta = 1/d with a floor so duplicate points do not divide by zero
    let eta: Vec<Vec<f64>> = dist
        .iter()
        .map(|row| row.iter().map(|&d| 1.0 / d.max(1e-12)).collect())
        .collect();

    let nn = nn_tour(points, 0)?;
    if nn.length == 0.0 {
        // all points coincident
        return Ok(nn);
    }
    let tau0 = params.tau0.unwrap_or(1.0 / (n as f64 * nn.length));
    let mut tau = vec![vec![tau0; n]; n];

    let mut best = nn;
    for _ in 0..params.n_iters {
        for ant in 0..params.n_ants {
            let start = ant % n;
            let mut order = Vec::with_capacity(n);
            let mut visited = vec![false; n];
            let mut current = start;
            order.push(current);
            visited[current] = true;
            while order.len() < n {
                let next = if rng.unit() < params.q0 {
                    // exploit: argmax tau * eta^beta, ties to lowest index
                    let mut best_j = usize::MAX;
                    let mut best_v = f64::NEG_INFINITY;
                    for j in 0..n {
                        if !visited[j] {
                            let v = tau[current][j] * eta[current][j].powf(params.beta);
                            if v > best_v {
                                best_v = v;
                                best_j = j;
                            }
                        }
                    }
                    best_j
                } else {
                    // explore: roulette over tau * eta^beta
                    let weights: Vec<(usize, f64)> = (0..n)
                        .filter(|&j| !visited[j])
                        .map(|j| (j, tau[current][j] * eta[current][j].powf(params.beta)))
                        .collect();
                    let total: f64 = weights.iter().map(|&(_, w)| w).sum();
                    let mut pick = rng.unit() * total;
                    let mut chosen = weights[weights.len() - 1].0;
                    for &(j, w) in &weights {
                        pick -= w;
                        if pick <= 0.0 {
                            chosen = j;
                            break;
                        }
                    }
                    chosen
                };
                // local pheromone update
                tau[current][next] = (1.0 - params.phi) * tau[current][next] + params.phi * tau0;
                tau[next][current] = tau[current][next];
                current = next;
                order.push(current);
                visited[current] = true;
            }
            tau[current][start] = (1.0 - params.phi) * tau[current][start] + params.phi * tau0;
            tau[start][current] = tau[current][start];

            let length = closed_length(points, &order);
            if length < best.length {
                best = Route { order, length };
            }
        }
        // global update on the best-so-far tour
        let deposit = params.rho / best.length;
        let m = best.order.len();
        for i in 0..m {
            let a = best.order[i];
            let b = best.order[(i + 1) % m];
            tau[a][b] = (1.0 - params.rho) * tau[a][b] + deposit;
            tau[b][a] = tau[a][b];
        }
    }
    Ok(best)
}

/// Which tour solver to use for route evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteMethod {
    Nn,
    Acs,
}

/// Closed tour for one cluster, in dataset point indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRoute {
    pub cluster: usize,
    /// Dataset point indices in visiting order; empty for clusters of size
    /// 0 or 1, which contribute length 0.
    pub order: Vec<usize>,
    pub length: f64,
}

/// Per-cluster routes plus the grand total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteTotals {
    pub routes: Vec<ClusterRoute>,
    pub total: f64,
}

/// Solve a closed tour per cluster and sum the lengths. Each cluster gets
/// an independent rng stream derived from the cluster index, so results do
/// not depend on evaluation order.
pub fn cluster_route_total(
    data: &Dataset,
    part: &Partition,
    method: RouteMethod,
    params: &AcsParams,
    rng: &RngStream,
) -> Result<RouteTotals> {
    let mut routes = Vec::with_capacity(part.k());
    let mut total = 0.0;
    for (k, members) in part.clusters.iter().enumerate() {
        let route = if members.len() < 2 {
            ClusterRoute {
                cluster: k,
                order: Vec::new(),
                length: 0.0,
            }
        } else {
            let pts: Vec<Point> = members.iter().map(|&i| data.point(i).clone()).collect();
            let solved = match method {
                RouteMethod::Nn => nn_tour(&pts, 0)?,
                RouteMethod::Acs => acs_tour(&pts, params, &mut rng.derive(&[k as u64]))?,
            };
            ClusterRoute {
                cluster: k,
                order: solved.order.iter().map(|&i| members[i]).collect(),
                length: solved.length,
            }
        };
        total += route.length;
        routes.push(route);
    }
    Ok(RouteTotals { routes, total })
}
