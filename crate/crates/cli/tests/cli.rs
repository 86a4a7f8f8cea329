use std::path::Path;
use std::process::{Command, Output};

use aperiodic_core::generators::SubstitutionSource;
use aperiodic_core::geometry::{PointSource, Region};
use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aperiodic"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_fibonacci_matches_substitution() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["generate", "--out", "g"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&tmp.path().join("g/points.json"));
    assert_eq!(v["coords"], "exact");
    let want = SubstitutionSource::fibonacci()
        .window(&Region::interval(0.0, 100.0))
        .unwrap()
        .len();
    assert_eq!(v["points"].as_array().unwrap().len(), want);
    let m = read_json(&tmp.path().join("g/manifest.json"));
    assert_eq!(m["command"], "generate");
    assert!(m["config"]["source"]["type"] == "fibonacci");
}

#[test]
fn bad_config_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "bad.json", r#"{"source": {"type": "lattice", "basis": [[0.0]]}}"#);
    let out = run(tmp.path(), &["generate", "--config", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    write(tmp.path(), "typo.json", r#"{"sorce": {"type": "lattice"}}"#);
    assert_eq!(run(tmp.path(), &["freq", "--config", "typo.json"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn freq_on_integers() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "z.json", r#"{"source": {"type": "lattice"}, "schedule": [250, 1000]}"#);
    let out = run(tmp.path(), &["freq", "--config", "z.json", "--out", "f"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("f/freq.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    let ratio: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
    assert!((ratio - 1.0).abs() <= 5e-4 + 1e-12, "{last}");
}

#[test]
fn diffract_on_integers() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "z.json", r#"{"source": {"type": "lattice"}, "k_range": [-1.5, 1.5]}"#);
    let out = run(tmp.path(), &["diffract", "--config", "z.json", "--out", "d", "--plot-data"]);
    assert!(out.status.success());
    let v = read_json(&tmp.path().join("d/diffraction.json"));
    let ks: Vec<f64> = v["peaks"].as_array().unwrap().iter().map(|p| p["k"].as_f64().unwrap()).collect();
    assert_eq!(ks, vec![-1.0, 0.0, 1.0]);
    assert!(tmp.path().join("d/diffraction.dat").exists());
    let header = std::fs::read_to_string(tmp.path().join("d/diffraction.csv")).unwrap();
    assert!(header.starts_with("k,re,im,intensity,n,retained"));
}

#[test]
fn metric_bracket() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "m.json",
        r#"{"source": {"type": "lattice"}, "other": {"type": "lattice", "origin": [0.1]}}"#,
    );
    let out = run(tmp.path(), &["metric", "--config", "m.json", "--out", "m"]);
    assert!(out.status.success());
    let v = read_json(&tmp.path().join("m/metric.json"));
    let (lo, hi) = (v["lower"].as_f64().unwrap(), v["upper"].as_f64().unwrap());
    assert!(lo <= 0.05 && 0.05 <= hi && hi - lo <= 0.01);
}

#[test]
fn outputs_are_deterministic_and_manifest_replays() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "c.json",
        r#"{"source": {"type": "poisson", "intensity": 1.5}, "radius": 3, "schedule": [300]}"#,
    );
    let a = run(tmp.path(), &["autocorr", "--config", "c.json", "--out", "a", "--seed", "4", "--threads", "1"]);
    assert!(a.status.success());
    let b = run(tmp.path(), &["autocorr", "--config", "a/manifest.json", "--out", "b", "--threads", "4"]);
    assert!(b.status.success());
    for f in ["autocorr.csv", "autocorr.json", "manifest.json"] {
        let x = std::fs::read(tmp.path().join("a").join(f)).unwrap();
        let y = std::fs::read(tmp.path().join("b").join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
    }
    let m = read_json(&tmp.path().join("a/manifest.json"));
    assert_eq!(m["config"]["seed"], 4);
}

#[test]
fn partition_and_classes() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run(tmp.path(), &["partition", "--out", "p"]).status.success());
    let cells = read_json(&tmp.path().join("p/partition.json"));
    let first = &cells.as_array().unwrap()[0];
    assert!(first.get("cluster").is_some() && first.get("interval").is_some());
    let s = read_json(&tmp.path().join("p/partition_summary.json"));
    assert!((s["mass"].as_f64().unwrap() - 1.0).abs() < 5e-3);
    assert!(run(tmp.path(), &["classes", "--out", "c"]).status.success());
}

#[test]
fn verify_lattice_suite_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["verify", "lattice", "--fast"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
}
