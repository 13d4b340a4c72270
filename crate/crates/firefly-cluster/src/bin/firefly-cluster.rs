//! Batch CLI front end: dataset generation, clustering, baselines, route
//! evaluation and side-by-side comparison, with JSON reports and SVG plots.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use firefly_cluster::auto::{auto_cluster, AutoKParams};
use firefly_cluster::compare::run_comparison;
use firefly_cluster::data::{assign, Dataset};
use firefly_cluster::fa::{run_fixed_k, FaParams};
use firefly_cluster::fitness::{
    default_bounds, FitnessWeights, NormalizationBounds, SeparationTerm,
};
use firefly_cluster::kmeans::{elbow_point, kmeans, wcss_curve, CurveAlgo, CurveParams};
use firefly_cluster::report::{
    cluster_hulls, render_svg, DatasetSummary, Invocation, Report, RunSummary, SelectedSolution,
};
use firefly_cluster::rng::RngStream;
use firefly_cluster::synth::{
    gen_blobs, gen_blobs_with_corridors, gen_uniform, points_to_text, validate_gen,
};
use firefly_cluster::tsp::{cluster_route_total, AcsParams, RouteMethod};
use firefly_cluster::{Firefly, Partition};

#[derive(Parser)]
#[command(name = "firefly-cluster", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Input point file (whitespace- or comma-separated rows, '#' comments).
    #[arg(long, global = true)]
    data: Option<PathBuf>,

    /// Master seed; identical seeds reproduce reports bit-identically.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the JSON report here (stdout if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Write an SVG plot here (2D datasets only).
    #[arg(long, global = true)]
    svg: Option<PathBuf>,

    /// Fitness weights as "wc,ws,wt".
    #[arg(long, global = true, default_value = "0.333333,0.333333,0.333333")]
    weights: String,

    /// Normalization bounds: "auto" or "c,s,t".
    #[arg(long, global = true, default_value = "auto")]
    bounds: String,

    /// Orientation of the separation term in the minimized total.
    #[arg(long, global = true, value_enum, default_value_t = SeparationArg::Intent)]
    separation_term: SeparationArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeparationArg {
    Intent,
    PaperLiteral,
}

impl From<SeparationArg> for SeparationTerm {
    fn from(v: SeparationArg) -> Self {
        match v {
            SeparationArg::Intent => SeparationTerm::Intent,
            SeparationArg::PaperLiteral => SeparationTerm::PaperLiteral,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset (Gaussian blobs, corridors or uniform).
    Gen {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of Gaussian blobs (0 for a pure uniform field).
        #[arg(long, default_value_t = 4)]
        blobs: usize,
        #[arg(long, default_value_t = 50)]
        points_per_blob: usize,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        /// Side length of the square field.
        #[arg(long = "box", default_value_t = 40.0)]
        box_size: f64,
        /// Number of corridor strips to add.
        #[arg(long, default_value_t = 0)]
        corridors: usize,
        #[arg(long, default_value_t = 30)]
        points_per_corridor: usize,
        /// Points for a uniform field (used when --blobs 0).
        #[arg(long, default_value_t = 1250)]
        uniform_points: usize,
        /// Sidecar file for ground-truth labels.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Cluster a dataset with the firefly algorithm.
    Cluster {
        #[command(subcommand)]
        mode: ClusterMode,
    },
    /// K-Means baseline.
    Kmeans {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 300)]
        max_iters: usize,
    },
    /// WCSS curve over a K range plus automated elbow detection.
    Elbow {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = AlgoArg::Kmeans)]
        algo: AlgoArg,
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 100)]
        iters: usize,
    },
    /// Closed-tour route evaluation over the dataset, optionally per
    /// cluster via a labels file.
    Route {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Acs)]
        method: MethodArg,
        /// Labels file assigning each point to a cluster; one tour over the
        /// whole dataset if omitted.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        ants: usize,
        #[arg(long, default_value_t = 200)]
        acs_iters: usize,
        #[arg(long, default_value_t = 0.9)]
        q0: f64,
        #[arg(long, default_value_t = 0.1)]
        rho: f64,
    },
    /// Auto-FA vs K-Means at equal K: per-cluster ACS distances side by side.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long, default_value_t = 10)]
        ants: usize,
        #[arg(long, default_value_t = 200)]
        acs_iters: usize,
    },
}

#[derive(Subcommand)]
enum ClusterMode {
    /// Fixed cluster count with the canonical FA.
    Fixed {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 15)]
        fireflies: usize,
        #[arg(long, default_value_t = 0.3)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.95)]
        delta: f64,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        /// Also solve per-cluster routes with this method.
        #[arg(long, value_enum)]
        routes: Option<MethodArg>,
    },
    /// Automatic cluster-count selection.
    Auto {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long, value_enum)]
        routes: Option<MethodArg>,
    },
}

#[derive(Args, Clone)]
struct AutoArgs {
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    #[arg(long, default_value_t = 10)]
    k_max: usize,
    #[arg(long, default_value_t = 6)]
    runs: usize,
    #[arg(long, default_value_t = 15)]
    fireflies: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.95)]
    delta: f64,
    #[arg(long, default_value_t = 250)]
    iters: usize,
    #[arg(long, default_value_t = 0.2)]
    init_prob: f64,
    #[arg(long, default_value_t = 0.1)]
    final_prob: f64,
}

impl AutoArgs {
    fn to_params(&self) -> AutoKParams {
        AutoKParams {
            k_min: self.k_min,
            k_max: self.k_max,
            initial_prob: self.init_prob,
            final_prob: self.final_prob,
            num_runs: self.runs,
            fa: FaParams {
                n_fireflies: self.fireflies,
                alpha0: self.alpha,
                beta0: 1.0,
                gamma: self.gamma,
                delta: self.delta,
                max_gens: self.iters,
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Nn,
    Acs,
}

impl From<MethodArg> for RouteMethod {
    fn from(v: MethodArg) -> Self {
        match v {
            MethodArg::Nn => RouteMethod::Nn,
            MethodArg::Acs => RouteMethod::Acs,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Fa,
    Kmeans,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SWARM_CLUSTER_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("invalid SWARM_CLUSTER_THREADS value: {threads}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    /// Bad flags/arguments: exit 2.
    Usage(String),
    /// Dataset or IO problems: exit 1.
    Data(String),
}

impl From<firefly_cluster::Error> for CliError {
    fn from(e: firefly_cluster::Error) -> Self {
        use firefly_cluster::Error::*;
        match e {
            InvalidParam(_) | KOutOfRange { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

fn parse_weights(s: &str) -> Result<FitnessWeights, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "--weights expects \"wc,ws,wt\", got {s:?}"
        )));
    }
    let vals: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--weights has a non-numeric entry in {s:?}")))?;
    FitnessWeights::new(vals[0], vals[1], vals[2]).map_err(Into::into)
}

fn parse_bounds(s: &str, data: &Dataset) -> Result<NormalizationBounds, CliError> {
    if s == "auto" {
        return Ok(default_bounds(data));
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "--bounds expects \"auto\" or \"c,s,t\", got {s:?}"
        )));
    }
    let vals: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--bounds has a non-numeric entry in {s:?}")))?;
    NormalizationBounds::new(vals[0], vals[1], vals[2]).map_err(Into::into)
}

fn load_data(common: &CommonArgs) -> Result<(Dataset, String), CliError> {
    let path = common
        .data
        .as_ref()
        .ok_or_else(|| CliError::Usage("--data is required for this command".into()))?;
    let ds = Dataset::load(path).map_err(|e| CliError::Data(e.to_string()))?;
    Ok((ds, path.display().to_string()))
}

fn emit(report: &Report, common: &CommonArgs) -> Result<(), CliError> {
    let json = report.to_json();
    match &common.out {
        Some(path) => std::fs::write(path, json.as_bytes())
            .map_err(|e| CliError::Data(format!("writing {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(())
}

fn emit_svg(
    common: &CommonArgs,
    data: &Dataset,
    part: &Partition,
    routes: Option<&firefly_cluster::RouteTotals>,
) -> Result<(), CliError> {
    let Some(path) = &common.svg else {
        return Ok(());
    };
    if data.dim() != 2 {
        eprintln!("warning: SVG output skipped for {}-dimensional data", data.dim());
        return Ok(());
    }
    let hulls = cluster_hulls(data, part).map_err(CliError::from)?;
    let svg = render_svg(data, part, Some(&hulls), routes);
    std::fs::write(path, svg.as_bytes())
        .map_err(|e| CliError::Data(format!("writing {}: {e}", path.display())))
}

fn attach_spatial(
    report: &mut Report,
    common: &CommonArgs,
    data: &Dataset,
    firefly: &Firefly,
    routes: Option<MethodArg>,
    acs: &AcsParams,
    seed: u64,
) -> Result<(), CliError> {
    let part = assign(data, firefly);
    report.assignment = Some(part.assignment.clone());
    if data.dim() == 2 {
        report.hulls = Some(cluster_hulls(data, &part)?);
    } else if common.svg.is_some() {
        eprintln!("warning: hulls omitted for {}-dimensional data", data.dim());
    }
    let totals = match routes {
        Some(m) => Some(cluster_route_total(
            data,
            &part,
            m.into(),
            acs,
            &RngStream::new(seed, 100),
        )?),
        None => None,
    };
    report.routes = totals.clone();
    emit_svg(common, data, &part, totals.as_ref())?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            common,
            blobs,
            points_per_blob,
            sigma,
            box_size,
            corridors,
            points_per_corridor,
            uniform_points,
            labels_out,
        } => {
            validate_gen(sigma, box_size).map_err(CliError::from)?;
            let (points, labels) = if blobs == 0 {
                (gen_uniform(uniform_points, box_size, common.seed), Vec::new())
            } else if corridors > 0 {
                gen_blobs_with_corridors(
                    blobs,
                    points_per_blob,
                    sigma,
                    corridors,
                    points_per_corridor,
                    box_size,
                    common.seed,
                )
            } else {
                gen_blobs(blobs, points_per_blob, sigma, box_size, common.seed)
            };
            let out = common
                .out
                .as_ref()
                .ok_or_else(|| CliError::Usage("gen requires --out".into()))?;
            std::fs::write(out, points_to_text(&points))
                .map_err(|e| CliError::Data(format!("writing {}: {e}", out.display())))?;
            if let Some(labels_path) = labels_out {
                let text: String = labels.iter().map(|l| format!("{l}\n")).collect();
                std::fs::write(&labels_path, text)
                    .map_err(|e| CliError::Data(format!("writing {}: {e}", labels_path.display())))?;
            }
            Ok(())
        }

        Command::Cluster { mode } => match mode {
            ClusterMode::Fixed {
                common,
                k,
                fireflies,
                alpha,
                gamma,
                delta,
                iters,
                routes,
            } => {
                let started = Instant::now();
                let (data, path) = load_data(&common)?;
                let w = parse_weights(&common.weights)?;
                let b = parse_bounds(&common.bounds, &data)?;
                let term = common.separation_term.into();
                let params = FaParams {
                    n_fireflies: fireflies,
                    alpha0: alpha,
                    beta0: 1.0,
                    gamma,
                    delta,
                    max_gens: iters,
                };
                let res = run_fixed_k(
                    &data,
                    k,
                    &params,
                    &w,
                    &b,
                    term,
                    &RngStream::new(common.seed, 0),
                )?;
                let mut report = Report::new(
                    Invocation {
                        command: "cluster fixed".into(),
                        seed: common.seed,
                        config: serde_json::json!({
                            "k": k, "params": params, "weights": w, "bounds": b,
                            "separation_term": term,
                        }),
                    },
                    DatasetSummary::from_dataset(&data, Some(path)),
                );
                report.selected = Some(SelectedSolution {
                    k,
                    fitness: res.breakdown,
                    wcss: res.wcss,
                    centroids: res.best.centroids.iter().map(|c| c.coords.clone()).collect(),
                });
                report.history = Some(res.history.clone());
                attach_spatial(
                    &mut report,
                    &common,
                    &data,
                    &res.best,
                    routes,
                    &AcsParams::default(),
                    common.seed,
                )?;
                report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
                emit(&report, &common)
            }

            ClusterMode::Auto {
                common,
                auto,
                routes,
            } => {
                let started = Instant::now();
                let (data, path) = load_data(&common)?;
                let w = parse_weights(&common.weights)?;
                let b = parse_bounds(&common.bounds, &data)?;
                let term = common.separation_term.into();
                let params = auto.to_params();
                let res = auto_cluster(&data, &params, &w, &b, term, common.seed)?;
                let best = res.best();
                let mut report = Report::new(
                    Invocation {
                        command: "cluster auto".into(),
                        seed: common.seed,
                        config: serde_json::json!({
                            "params": params, "weights": w, "bounds": b,
                            "separation_term": term,
                        }),
                    },
                    DatasetSummary::from_dataset(&data, Some(path)),
                );
                report.runs = Some(
                    res.runs
                        .iter()
                        .enumerate()
                        .map(|(i, r)| RunSummary::from_run(i, r))
                        .collect(),
                );
                report.selected = Some(SelectedSolution {
                    k: best.k,
                    fitness: best.breakdown,
                    wcss: best.wcss,
                    centroids: best.best.centroids.iter().map(|c| c.coords.clone()).collect(),
                });
                report.history = Some(best.history.clone());
                let best_firefly = best.best.clone();
                attach_spatial(
                    &mut report,
                    &common,
                    &data,
                    &best_firefly,
                    routes,
                    &AcsParams::default(),
                    common.seed,
                )?;
                report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
                emit(&report, &common)
            }
        },

        Command::Kmeans {
            common,
            k,
            restarts,
            max_iters,
        } => {
            let started = Instant::now();
            let (data, path) = load_data(&common)?;
            let res = kmeans(&data, k, restarts, max_iters, &RngStream::new(common.seed, 0))?;
            let mut report = Report::new(
                Invocation {
                    command: "kmeans".into(),
                    seed: common.seed,
                    config: serde_json::json!({
                        "k": k, "restarts": restarts, "max_iters": max_iters,
                    }),
                },
                DatasetSummary::from_dataset(&data, Some(path)),
            );
            report.selected = Some(SelectedSolution {
                k,
                fitness: firefly_cluster::evaluate(
                    &data,
                    &res.centroids,
                    &parse_weights(&common.weights)?,
                    &parse_bounds(&common.bounds, &data)?,
                    common.separation_term.into(),
                ),
                wcss: res.wcss,
                centroids: res
                    .centroids
                    .centroids
                    .iter()
                    .map(|c| c.coords.clone())
                    .collect(),
            });
            let centroids = res.centroids.clone();
            attach_spatial(
                &mut report,
                &common,
                &data,
                &centroids,
                None,
                &AcsParams::default(),
                common.seed,
            )?;
            report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            emit(&report, &common)
        }

        Command::Elbow {
            common,
            algo,
            k_min,
            k_max,
            restarts,
            iters,
        } => {
            let started = Instant::now();
            let (data, path) = load_data(&common)?;
            let w = parse_weights(&common.weights)?;
            let b = parse_bounds(&common.bounds, &data)?;
            let term = common.separation_term.into();
            let curve_params = CurveParams {
                fa: FaParams {
                    max_gens: iters,
                    ..FaParams::default()
                },
                weights: w,
                bounds: b,
                term,
                restarts,
                max_iters: 300,
            };
            let algo = match algo {
                AlgoArg::Fa => CurveAlgo::Fa,
                AlgoArg::Kmeans => CurveAlgo::Kmeans,
            };
            let curve = wcss_curve(
                &data,
                k_min,
                k_max,
                algo,
                &curve_params,
                &RngStream::new(common.seed, 0),
            )?;
            let elbow = elbow_point(&curve)?;
            let mut report = Report::new(
                Invocation {
                    command: "elbow".into(),
                    seed: common.seed,
                    config: serde_json::json!({
                        "algo": algo, "k_min": k_min, "k_max": k_max,
                        "restarts": restarts, "iters": iters,
                    }),
                },
                DatasetSummary::from_dataset(&data, Some(path)),
            );
            report.wcss_curve = Some(curve);
            report.elbow_k = Some(elbow);
            report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            emit(&report, &common)
        }

        Command::Route {
            common,
            method,
            labels,
            ants,
            acs_iters,
            q0,
            rho,
        } => {
            let started = Instant::now();
            let (data, path) = load_data(&common)?;
            let acs = AcsParams {
                n_ants: ants,
                n_iters: acs_iters,
                q0,
                rho,
                ..AcsParams::default()
            };
            let part = match labels {
                Some(labels_path) => {
                    partition_from_labels(&data, &labels_path)?
                }
                None => {
                    // single tour over everything: one all-enclosing cluster
                    let centroid = firefly_cluster::Point::new(
                        (0..data.dim())
                            .map(|d| (data.bbox_min()[d] + data.bbox_max()[d]) / 2.0)
                            .collect(),
                    );
                    assign(&data, &Firefly::new(vec![centroid]))
                }
            };
            let totals = cluster_route_total(
                &data,
                &part,
                method.into(),
                &acs,
                &RngStream::new(common.seed, 0),
            )?;
            let mut report = Report::new(
                Invocation {
                    command: "route".into(),
                    seed: common.seed,
                    config: serde_json::json!({
                        "method": RouteMethod::from(method), "acs": acs,
                    }),
                },
                DatasetSummary::from_dataset(&data, Some(path)),
            );
            report.routes = Some(totals.clone());
            report.assignment = Some(part.assignment.clone());
            emit_svg(&common, &data, &part, Some(&totals))?;
            report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            emit(&report, &common)
        }

        Command::Compare {
            common,
            auto,
            ants,
            acs_iters,
        } => {
            let started = Instant::now();
            let (data, path) = load_data(&common)?;
            let w = parse_weights(&common.weights)?;
            let b = parse_bounds(&common.bounds, &data)?;
            let term = common.separation_term.into();
            let params = auto.to_params();
            let acs = AcsParams {
                n_ants: ants,
                n_iters: acs_iters,
                ..AcsParams::default()
            };
            let cmp = run_comparison(&data, &params, &w, &b, term, &acs, common.seed)?;
            let mut report = Report::new(
                Invocation {
                    command: "compare".into(),
                    seed: common.seed,
                    config: serde_json::json!({
                        "params": params, "weights": w, "bounds": b,
                        "separation_term": term, "acs": acs,
                    }),
                },
                DatasetSummary::from_dataset(&data, Some(path)),
            );
            report.comparison = Some(cmp);
            report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            emit(&report, &common)
        }
    }
}

fn partition_from_labels(data: &Dataset, path: &PathBuf) -> Result<Partition, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("reading {}: {e}", path.display())))?;
    let labels: Vec<usize> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Data(format!("{}: labels must be integers", path.display())))?;
    if labels.len() != data.len() {
        return Err(CliError::Data(format!(
            "{}: {} labels for {} points",
            path.display(),
            labels.len(),
            data.len()
        )));
    }
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut clusters = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        clusters[l].push(i);
    }
    // synthesize centroids as cluster means so the partition is well formed
    let centroids: Vec<firefly_cluster::Point> = clusters
        .iter()
        .map(|members| {
            let mut coords = vec![0.0; data.dim()];
            if members.is_empty() {
                return firefly_cluster::Point::new(coords);
            }
            for &i in members {
                for (d, &c) in data.point(i).coords.iter().enumerate() {
                    coords[d] += c;
                }
            }
            for c in coords.iter_mut() {
                *c /= members.len() as f64;
            }
            firefly_cluster::Point::new(coords)
        })
        .collect();
    Ok(Partition {
        assignment: labels,
        clusters,
        centroids: Firefly::new(centroids),
    })
}
