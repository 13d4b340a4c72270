//! End-to-end checks of the batch CLI: subcommand wiring, report
//! determinism, SVG output and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_firefly-cluster"))
}

fn gen_dataset(dir: &Path) -> std::path::PathBuf {
    let data = dir.join("points.txt");
    let status = bin()
        .args([
            "gen",
            "--blobs",
            "3",
            "--points-per-blob",
            "20",
            "--sigma",
            "0.5",
            "--box",
            "30",
            "--seed",
            "11",
            "--out",
        ])
        .arg(&data)
        .status()
        .unwrap();
    assert!(status.success());
    data
}

#[test]
fn gen_then_cluster_fixed_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path());

    let run = || {
        let out = bin()
            .args(["cluster", "fixed", "--k", "3", "--iters", "30", "--seed", "5", "--data"])
            .arg(&data)
            .output()
            .unwrap();
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    assert_eq!(a["selected"]["k"], 3);
    assert_eq!(a["assignment"].as_array().unwrap().len(), 60);
}

#[test]
fn kmeans_elbow_route_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path());

    let out = bin()
        .args(["kmeans", "--k", "3", "--seed", "2", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["selected"]["wcss"].as_f64().unwrap() > 0.0);

    let out = bin()
        .args(["elbow", "--k-min", "2", "--k-max", "6", "--seed", "2", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elbow_k"], 3);

    let out = bin()
        .args(["route", "--method", "nn", "--seed", "2", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["routes"]["total"].as_f64().unwrap() > 0.0);
}

#[test]
fn svg_output_and_auto_cluster() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path());
    let svg = dir.path().join("plot.svg");
    let json = dir.path().join("report.json");

    let status = bin()
        .args([
            "cluster", "auto", "--runs", "2", "--iters", "30", "--k-max", "6", "--seed", "3",
        ])
        .arg("--data")
        .arg(&data)
        .arg("--out")
        .arg(&json)
        .arg("--svg")
        .arg(&svg)
        .status()
        .unwrap();
    assert!(status.success());

    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("<circle"));

    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let k = v["selected"]["k"].as_u64().unwrap() as usize;
    assert!((2..=6).contains(&k));
    assert_eq!(v["hulls"].as_array().unwrap().len(), k);
}

#[test]
fn exit_codes_distinguish_flag_and_data_errors() {
    // unknown flag -> 2 (argument parsing)
    let out = bin().args(["kmeans", "--definitely-not-a-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // bad weights -> 2
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path());
    let out = bin()
        .args(["kmeans", "--k", "2", "--weights", "1,2", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // missing data file -> 1
    let out = bin()
        .args(["kmeans", "--k", "2", "--data", "/nonexistent/points.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // malformed row -> 1, with a line number in the message
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\n3 nope\n").unwrap();
    let out = bin().args(["kmeans", "--k", "2", "--data"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2"));
}

#[test]
fn thread_env_var_is_validated() {
    let out = bin()
        .env("SWARM_CLUSTER_THREADS", "zero")
        .args(["kmeans", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path());
    let out = bin()
        .env("SWARM_CLUSTER_THREADS", "1")
        .args(["kmeans", "--k", "3", "--seed", "2", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(out.status.success());
}
