use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sqzint::distprob::balanced_conditionals;
use sqzint::measure::photon_number_distribution;
use sqzint::model::ExperimentConfig;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}

fn sqzint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqzint"))
        .args(args)
        .env_remove("SQZINT_THREADS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn q2n_inline() {
    let v = json(&sqzint(&["q2n", "--spectrum", "0.5,0.5", "--n", "3"]));
    assert_eq!(v["q2n"].as_f64().unwrap(), 0.4);
}

#[test]
fn estimate() {
    let v = json(&sqzint(&[
        "estimate",
        "--purity",
        "0.938",
        "--photons",
        "43",
    ]));
    assert!((v["epsilon"].as_f64().unwrap() - 0.032).abs() < 5e-4);
    assert!((v["q_approx"].as_f64().unwrap() - 0.497).abs() < 1e-3);
}

#[test]
fn beamsplitter_pattern_matches_conditionals() {
    let path = config("beamsplitter_pure.json");
    let p = path.to_str().unwrap();
    let get = |pattern: &str| {
        json(&sqzint(&["prob", "--config", p, "--pattern", pattern]))["rows"][0]["probability"]
            .as_f64()
            .unwrap()
    };
    let (p40, p04, p22) = (get("4,0"), get("0,4"), get("2,2"));
    let c = balanced_conditionals(1.0);
    assert!((p22 / (p40 + p04 + p22) - c.p22).abs() < 1e-12);
    assert!((p40 / (p40 + p04 + p22) - c.p40).abs() < 1e-12);
}

#[test]
fn prob_all_rows_sum_to_photon_number_distribution() {
    for name in [
        "beamsplitter_two_mode.json",
        "tritter_orthogonal.json",
        "tritter_nondegenerate.json",
    ] {
        let path = config(name);
        let cfg = ExperimentConfig::from_path(&path).unwrap();
        let dist = photon_number_distribution(cfg.sources(), 2);
        for (n, &expect) in dist.iter().enumerate().skip(1) {
            let v = json(&sqzint(&[
                "prob-all",
                "--config",
                path.to_str().unwrap(),
                "--photons",
                &(2 * n).to_string(),
            ]));
            let sum: f64 = v["rows"]
                .as_array()
                .unwrap()
                .iter()
                .map(|r| r["probability"].as_f64().unwrap())
                .sum();
            assert!(
                (sum - expect).abs() < 1e-10,
                "{name}, n = {n}: {sum} vs {expect}"
            );
        }
    }
}

#[test]
fn csv_columns() {
    let path = config("tritter_orthogonal.json");
    let out = sqzint(&[
        "prob-all",
        "--config",
        path.to_str().unwrap(),
        "--photons",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pattern,probability,photons"));
    assert!(lines.next().unwrap().starts_with("\"2,0,0\","));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let path = config("tritter_nondegenerate.json");
    let args = [
        "prob-all",
        "--config",
        path.to_str().unwrap(),
        "--photons",
        "4",
    ];
    let one = sqzint(&[&args[..], &["--threads", "1"]].concat());
    let many = sqzint(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_sqzint"))
        .args(args)
        .env("SQZINT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, one.stdout);
}

#[test]
fn oracle_check_passes_on_samples() {
    for name in [
        "beamsplitter_pure.json",
        "beamsplitter_two_mode.json",
        "tritter_orthogonal.json",
        "tritter_nondegenerate.json",
    ] {
        let path = config(name);
        let v = json(&sqzint(&[
            "oracle-check",
            "--config",
            path.to_str().unwrap(),
        ]));
        assert_eq!(v["passed"], Value::Bool(true), "{name}");
    }
}

#[test]
fn oracle_check_reports_tolerance_failure() {
    let path = config("beamsplitter_two_mode.json");
    let out = sqzint(&[
        "oracle-check",
        "--config",
        path.to_str().unwrap(),
        "--tol",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_codes() {
    assert_eq!(sqzint(&["launch"]).status.code(), Some(64));
    assert_eq!(sqzint(&[]).status.code(), Some(64));
    assert_eq!(sqzint(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"interferometer":{"re":[[1,1],[0,1]]},"sources":[]}"#,
    )
    .unwrap();
    assert_eq!(
        sqzint(&["validate", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let path = config("tritter_nondegenerate.json");
    let out = sqzint(&[
        "prob-all",
        "--config",
        path.to_str().unwrap(),
        "--photons",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("m.json");
    let out = sqzint(&[
        "matchings-dump",
        "--n",
        "3",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 15);
}

#[test]
fn tvd_bound_chooses_its_cutoff() {
    let path = config("beamsplitter_two_mode.json");
    let v = json(&sqzint(&["tvd-bound", "--config", path.to_str().unwrap()]));
    assert!(v["tail_mass"].as_f64().unwrap() < 1e-8);
    assert!(v["warning"].is_null());
    let b = v["tvd_bound"].as_f64().unwrap();
    assert!(b > 0.0 && b < 1.0);
}
