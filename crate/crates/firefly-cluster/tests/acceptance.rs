//! End-to-end acceptance suite. Each test checks one headline guarantee of
//! the toolkit against an independent reference implementation or a known
//! ground truth, prints a single PASS line, and enforces a wall-clock
//! budget. Run with `cargo test --test acceptance`.

use std::time::Instant;

use firefly_cluster::auto::{auto_cluster, AutoKParams};
use firefly_cluster::compare::run_comparison;
use firefly_cluster::data::{assign, Dataset, Firefly, Point};
use firefly_cluster::fa::{decay_alpha, run_fixed_k, wcss, FaParams};
use firefly_cluster::fitness::{
    compactness, default_bounds, nn_tour_length, separation, FitnessWeights,
    NormalizationBounds, SeparationTerm,
};
use firefly_cluster::hull::{contains, convex_hull};
use firefly_cluster::kmeans::{elbow_point, kmeans, wcss_curve, CurveAlgo, CurveParams};
use firefly_cluster::report::{DatasetSummary, Invocation, Report, SelectedSolution};
use firefly_cluster::rng::RngStream;
use firefly_cluster::synth::{gen_blobs, gen_blobs_with_corridors};
use firefly_cluster::tsp::{acs_tour, brute_force_tour, nn_tour, AcsParams};

const TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// independent reference implementations, written from the definitions

fn oracle_assignment(points: &[Point], centroids: &[Point]) -> Vec<usize> {
    points
        .iter()
        .map(|p| {
            let dists: Vec<f64> = centroids.iter().map(|c| p.distance(c)).collect();
            let min = dists.iter().cloned().fold(f64::INFINITY, f64::min);
            dists.iter().position(|&d| d == min).unwrap()
        })
        .collect()
}

fn oracle_compactness(points: &[Point], centroids: &[Point], assignment: &[usize]) -> f64 {
    let k = centroids.len();
    let mut means = Vec::new();
    for c in 0..k {
        let members: Vec<&Point> = points
            .iter()
            .zip(assignment)
            .filter(|(_, &a)| a == c)
            .map(|(p, _)| p)
            .collect();
        if members.is_empty() {
            continue;
        }
        let total: f64 = members.iter().map(|p| p.distance(&centroids[c])).sum();
        means.push(total / members.len() as f64);
    }
    if means.is_empty() {
        0.0
    } else {
        means.iter().sum::<f64>() / means.len() as f64
    }
}

fn oracle_separation(centroids: &[Point]) -> f64 {
    let k = centroids.len();
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for i in 0..k {
        for j in 0..k {
            if j > i {
                sum += centroids[i].distance(&centroids[j]);
                pairs += 1;
            }
        }
    }
    sum / pairs as f64
}

fn oracle_wcss(points: &[Point], centroids: &[Point], assignment: &[usize]) -> f64 {
    points
        .iter()
        .zip(assignment)
        .map(|(p, &a)| {
            let d = p.distance(&centroids[a]);
            d * d
        })
        .sum()
}

fn random_instance(seed: u64) -> (Vec<Point>, Vec<Point>) {
    let mut rng = RngStream::new(seed, 90);
    let n = 10 + rng.index(91); // 10..=100
    let k = 2 + rng.index(5); // 2..=6
    let pts: Vec<Point> = (0..n)
        .map(|_| (rng.range(-50.0, 50.0), rng.range(-50.0, 50.0)).into())
        .collect();
    let cents: Vec<Point> = (0..k)
        .map(|_| (rng.range(-50.0, 50.0), rng.range(-50.0, 50.0)).into())
        .collect();
    (pts, cents)
}

// ---------------------------------------------------------------------------

#[test]
fn metric_oracle_equivalence() {
    let started = Instant::now();
    for seed in 0..100u64 {
        let (pts, cents) = random_instance(seed);
        let data = Dataset::from_points(pts.clone()).unwrap();
        let f = Firefly::new(cents.clone());
        let part = assign(&data, &f);

        let want_assign = oracle_assignment(&pts, &cents);
        assert_eq!(part.assignment, want_assign, "assignment mismatch, seed {seed}");

        let got_comp = compactness(&data, &part);
        let want_comp = oracle_compactness(&pts, &cents, &want_assign);
        assert!(
            (got_comp - want_comp).abs() <= TOL,
            "compactness mismatch, seed {seed}: {got_comp} vs {want_comp}"
        );

        let got_sep = separation(&f).unwrap();
        let want_sep = oracle_separation(&cents);
        assert!(
            (got_sep - want_sep).abs() <= TOL,
            "separation mismatch, seed {seed}: {got_sep} vs {want_sep}"
        );

        let got_wcss = wcss(&data, &f);
        let want_wcss = oracle_wcss(&pts, &cents, &want_assign);
        assert!(
            (got_wcss - want_wcss).abs() <= TOL * want_wcss.max(1.0),
            "wcss mismatch, seed {seed}: {got_wcss} vs {want_wcss}"
        );
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 5.0, "metric oracle check took {secs:.1}s, budget 5s");
    println!("PASS metric_oracle_equivalence: 100/100 instances match to 1e-9 ({secs:.2}s)");
}

#[test]
fn acs_matches_exact_optimum_on_small_instances() {
    let started = Instant::now();

    // closed tour around the unit square has length exactly 4
    let square: Vec<Point> = vec![
        (0.0, 0.0).into(),
        (1.0, 0.0).into(),
        (1.0, 1.0).into(),
        (0.0, 1.0).into(),
    ];
    let sq = acs_tour(&square, &AcsParams::default(), &mut RngStream::new(0, 0)).unwrap();
    assert!((sq.length - 4.0).abs() <= TOL, "unit square tour: {}", sq.length);

    let mut hits = 0usize;
    for seed in 0..100u64 {
        let mut rng = RngStream::new(seed, 91);
        let n = 6 + rng.index(3); // 6..=8
        let pts: Vec<Point> = (0..n)
            .map(|_| (rng.range(0.0, 20.0), rng.range(0.0, 20.0)).into())
            .collect();
        let exact = brute_force_tour(&pts).unwrap();
        let greedy = nn_tour(&pts, 0).unwrap();
        assert!(
            greedy.length >= exact.length - TOL,
            "greedy beat the optimum, seed {seed}"
        );
        let acs = acs_tour(&pts, &AcsParams::default(), &mut RngStream::new(seed, 92)).unwrap();
        assert!(
            acs.length >= exact.length - TOL,
            "ant colony beat the optimum, seed {seed}"
        );
        if (acs.length - exact.length).abs() <= 1e-6 {
            hits += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(hits >= 95, "ant colony matched the optimum on only {hits}/100 instances");
    assert!(secs < 30.0, "tour check took {secs:.1}s, budget 30s");
    println!("PASS acs_matches_exact_optimum_on_small_instances: {hits}/100 optimal ({secs:.2}s)");
}

#[test]
fn auto_k_recovers_four_blobs() {
    let started = Instant::now();
    // four blobs, 200 points, center spacing >= 20 sigma
    let (pts, _) = gen_blobs(4, 50, 0.5, 40.0, 17);
    let data = Dataset::from_points(pts).unwrap();
    let params = AutoKParams::default();
    let weights = FitnessWeights::default();
    let bounds = default_bounds(&data);

    let mut hits = 0usize;
    for seed in 0..6u64 {
        let per_seed = Instant::now();
        let res = auto_cluster(&data, &params, &weights, &bounds, SeparationTerm::Intent, seed)
            .unwrap();
        let secs = per_seed.elapsed().as_secs_f64();
        assert!(secs < 60.0, "seed {seed} took {secs:.1}s, budget 60s");
        if res.best().k == 4 {
            hits += 1;
        }
    }
    assert!(hits >= 5, "selected k = 4 on only {hits}/6 seeds");
    println!(
        "PASS auto_k_recovers_four_blobs: {hits}/6 seeds selected k = 4 ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn routes_competitive_with_kmeans() {
    let started = Instant::now();
    let mut wins = 0usize;
    for seed in 0..10u64 {
        let (pts, _) = gen_blobs_with_corridors(3, 35, 0.6, 1, 30, 40.0, seed);
        let data = Dataset::from_points(pts).unwrap();
        let diam = data.diameter();
        // route-aware objective: compactness-led with a meaningful tour
        // term, attraction scaled to the field size
        let weights = FitnessWeights::new(0.6, 0.2, 0.2).unwrap();
        let bounds = NormalizationBounds::new(diam, diam, nn_tour_length(data.points())).unwrap();
        let params = AutoKParams {
            fa: FaParams {
                gamma: 1.0 / (diam * diam),
                alpha0: 0.5,
                max_gens: 250,
                ..FaParams::default()
            },
            ..AutoKParams::default()
        };
        let cmp = run_comparison(
            &data,
            &params,
            &weights,
            &bounds,
            SeparationTerm::Intent,
            &AcsParams::default(),
            seed,
        )
        .unwrap();
        if cmp.fa_total <= 1.05 * cmp.kmeans_total {
            wins += 1;
        }
    }
    assert!(wins >= 8, "route total within 5% of the baseline on only {wins}/10 seeds");
    println!(
        "PASS routes_competitive_with_kmeans: {wins}/10 seeds within 1.05x ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn fixed_k_wcss_near_kmeans() {
    let started = Instant::now();
    let (pts, _) = gen_blobs(4, 50, 0.5, 40.0, 23);
    let data = Dataset::from_points(pts).unwrap();

    // a WCSS comparison wants a compactness objective; attraction is
    // scaled to the field size so the swarm actually converges
    let diam = data.diameter();
    let params = FaParams {
        gamma: 1.0 / (diam * diam),
        max_gens: 200,
        ..FaParams::default()
    };
    let fa = run_fixed_k(
        &data,
        4,
        &params,
        &FitnessWeights::new(1.0, 0.0, 0.0).unwrap(),
        &default_bounds(&data),
        SeparationTerm::Intent,
        &RngStream::new(23, 0),
    )
    .unwrap();
    let km = kmeans(&data, 4, 10, 300, &RngStream::new(23, 1)).unwrap();

    let secs = started.elapsed().as_secs_f64();
    assert!(
        fa.wcss <= 1.10 * km.wcss,
        "firefly WCSS {:.3} vs k-means {:.3}",
        fa.wcss,
        km.wcss
    );
    assert!(secs < 30.0, "fixed-K comparison took {secs:.1}s, budget 30s");
    println!(
        "PASS fixed_k_wcss_near_kmeans: {:.3} vs {:.3} ({secs:.1}s)",
        fa.wcss, km.wcss
    );
}

#[test]
fn invariant_suite() {
    let started = Instant::now();
    let mut seeds_used = 0usize;

    // alpha decay follows the closed form alpha0 * delta^t
    for seed in 0..40u64 {
        let mut rng = RngStream::new(seed, 93);
        let alpha0 = rng.range(0.05, 1.0);
        let delta = rng.range(0.5, 0.999);
        let mut a = alpha0;
        for t in 1..=20usize {
            a = decay_alpha(a, delta);
            let want = alpha0 * delta.powi(t as i32);
            assert!((a - want).abs() <= 1e-12 * want.max(1.0), "decay drift, seed {seed}");
        }
        seeds_used += 1;
    }

    // fixed-K: best-so-far history is non-increasing
    for seed in 0..30u64 {
        let (pts, _) = gen_blobs(2, 12, 0.8, 20.0, seed);
        let data = Dataset::from_points(pts).unwrap();
        let params = FaParams {
            max_gens: 12,
            n_fireflies: 8,
            ..FaParams::default()
        };
        let res = run_fixed_k(
            &data,
            2,
            &params,
            &FitnessWeights::default(),
            &default_bounds(&data),
            SeparationTerm::Intent,
            &RngStream::new(seed, 94),
        )
        .unwrap();
        for w in res.history.windows(2) {
            assert!(w[1] <= w[0] + TOL, "history increased, seed {seed}");
        }
        seeds_used += 1;
    }

    // auto-K: selected K stays inside [k_min, k_max] and every centroid is
    // an exact dataset point after snap/repair
    for seed in 0..30u64 {
        let (pts, _) = gen_blobs(3, 12, 0.8, 25.0, seed);
        let data = Dataset::from_points(pts).unwrap();
        let params = AutoKParams {
            k_max: 6,
            num_runs: 1,
            fa: FaParams {
                max_gens: 15,
                n_fireflies: 8,
                alpha0: 0.5,
                ..FaParams::default()
            },
            ..AutoKParams::default()
        };
        let res = auto_cluster(
            &data,
            &params,
            &FitnessWeights::default(),
            &default_bounds(&data),
            SeparationTerm::Intent,
            seed,
        )
        .unwrap();
        let best = res.best();
        assert!((params.k_min..=params.k_max).contains(&best.k), "k out of range, seed {seed}");
        for c in &best.best.centroids {
            assert!(
                data.points().iter().any(|p| p == c),
                "centroid is not a dataset point, seed {seed}"
            );
        }
        seeds_used += 1;
    }

    // convex hull contains every input point
    for seed in 0..40u64 {
        let mut rng = RngStream::new(seed, 95);
        let pts: Vec<Point> = (0..30)
            .map(|_| (rng.range(0.0, 10.0), rng.range(0.0, 10.0)).into())
            .collect();
        let hull = convex_hull(&pts).unwrap();
        for p in &pts {
            assert!(contains(&hull, p), "point escaped its hull, seed {seed}");
        }
        seeds_used += 1;
    }

    // Lloyd iterations never increase WCSS (single restart, same init)
    for seed in 0..30u64 {
        let (pts, _) = gen_blobs(3, 15, 1.0, 25.0, seed);
        let data = Dataset::from_points(pts).unwrap();
        let mut prev = f64::INFINITY;
        for iters in 1..=5usize {
            let res = kmeans(&data, 3, 1, iters, &RngStream::new(seed, 96)).unwrap();
            assert!(res.wcss <= prev + TOL, "WCSS increased with more iterations, seed {seed}");
            prev = res.wcss;
        }
        seeds_used += 1;
    }

    // reports are bit-identical across reruns once timing is stripped
    for seed in 0..30u64 {
        let (pts, _) = gen_blobs(2, 10, 0.6, 20.0, seed);
        let data = Dataset::from_points(pts).unwrap();
        let make = || {
            let res = run_fixed_k(
                &data,
                2,
                &FaParams {
                    max_gens: 10,
                    n_fireflies: 6,
                    ..FaParams::default()
                },
                &FitnessWeights::default(),
                &default_bounds(&data),
                SeparationTerm::Intent,
                &RngStream::new(seed, 97),
            )
            .unwrap();
            let mut report = Report::new(
                Invocation {
                    command: "cluster fixed".into(),
                    seed,
                    config: serde_json::json!({"k": 2}),
                },
                DatasetSummary::from_dataset(&data, None),
            );
            report.selected = Some(SelectedSolution {
                k: 2,
                fitness: res.breakdown,
                wcss: res.wcss,
                centroids: res.best.centroids.iter().map(|c| c.coords.clone()).collect(),
            });
            report.timing_ms = Some(seed as f64); // deliberately different
            report
        };
        let a = make();
        let mut b = make();
        b.timing_ms = Some(-1.0);
        assert_eq!(
            a.to_json_without_timing(),
            b.to_json_without_timing(),
            "report not deterministic, seed {seed}"
        );
        seeds_used += 1;
    }

    let secs = started.elapsed().as_secs_f64();
    assert!(seeds_used >= 200, "only {seeds_used} seeds exercised");
    assert!(secs < 60.0, "invariant suite took {secs:.1}s, budget 60s");
    println!("PASS invariant_suite: {seeds_used} seeded checks ({secs:.1}s)");
}

#[test]
fn elbow_finds_blob_count() {
    let started = Instant::now();
    let mut hits = 0usize;
    for blobs in [3usize, 4, 5] {
        let (pts, _) = gen_blobs(blobs, 40, 0.5, 40.0, blobs as u64);
        let data = Dataset::from_points(pts).unwrap();
        let params = CurveParams {
            fa: FaParams::default(),
            weights: FitnessWeights::default(),
            bounds: default_bounds(&data),
            term: SeparationTerm::Intent,
            restarts: 10,
            max_iters: 300,
        };
        let curve = wcss_curve(&data, 2, 9, CurveAlgo::Kmeans, &params, &RngStream::new(5, 0))
            .unwrap();
        let k = elbow_point(&curve).unwrap();
        if k == blobs {
            hits += 1;
        } else {
            eprintln!("elbow picked k = {k} for {blobs} blobs");
        }
    }
    assert_eq!(hits, 3, "elbow recovered the blob count on only {hits}/3 fields");
    println!(
        "PASS elbow_finds_blob_count: 3/3 fields ({:.1}s)",
        started.elapsed().as_secs_f64()
    );
}
