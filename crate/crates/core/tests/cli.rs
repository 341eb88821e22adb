use std::path::Path;
use std::process::{Command, Output};

use multiwalk::graph::WeightedGraph;
use multiwalk::harness::{ExperimentConfig, ReportBundle, Suite};

fn multiwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = multiwalk(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn small_config(dir: &Path) -> std::path::PathBuf {
    let mut cfg = ExperimentConfig::new(
        vec!["cycle:16".parse().unwrap(), "tree:3".parse().unwrap()],
        vec![1, 2, 4],
        11,
    );
    cfg.trials = 40;
    cfg.k_tilde_grid = vec![1, 2];
    cfg.suites = vec![Suite::Stationary, Suite::PartialMixing];
    let path = dir.join("config.json");
    std::fs::write(&path, cfg.to_json()).unwrap();
    path
}

#[test]
fn generate_writes_a_readable_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("torus.txt");
    ok(&["generate", "--family", "torus:2:4", "--out", file.to_str().unwrap()]);
    let g = WeightedGraph::from_edge_list(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 16);
    assert_eq!(g.edge_count(), 32);
}

#[test]
fn analyze_writes_quantities_and_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    ok(&[
        "analyze",
        "--family",
        "cycle:8",
        "--k",
        "2,4",
        "--profile",
        "32",
        "--out",
        out,
    ]);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("analysis.json")).unwrap()).unwrap();
    assert!(json.is_object());
    let profile = std::fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    assert!(profile.starts_with("t,d,s\n"));
    assert_eq!(profile.lines().count(), 34);
}

#[test]
fn estimate_is_reproducible_and_ignores_threads() {
    let args = [
        "estimate", "--family", "cycle:12", "--k", "3", "--trials", "50", "--seed", "5",
    ];
    let a = ok(&args).stdout;
    let b = ok(&[&args[..], &["--threads", "1"]].concat()).stdout;
    let c = ok(&[&args[..], &["--threads", "3"]].concat()).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
    let other = ok(&[
        "estimate", "--family", "cycle:12", "--k", "3", "--trials", "50", "--seed", "6",
    ])
    .stdout;
    assert_ne!(a, other);
}

#[test]
fn sweep_output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let cfg = cfg.to_str().unwrap();
    let runs: Vec<_> = [("a", "1"), ("b", "1"), ("c", "2")]
        .iter()
        .map(|(name, threads)| {
            let out = dir.path().join(name);
            multiwalk(&[
                "sweep",
                "--config",
                cfg,
                "--threads",
                threads,
                "--out",
                out.to_str().unwrap(),
            ]);
            out
        })
        .collect();
    for file in ["estimates.csv", "exact.csv", "bounds.csv", "skipped.csv"] {
        let first = std::fs::read(runs[0].join(file)).unwrap();
        assert!(!first.is_empty(), "{file} is empty");
        for run in &runs[1..] {
            assert_eq!(first, std::fs::read(run.join(file)).unwrap(), "{file} differs");
        }
    }
}

#[test]
fn report_merges_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let (a, b, merged) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("m"));
    multiwalk(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "stationary",
        "--out",
        a.to_str().unwrap(),
    ]);
    multiwalk(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--suite",
        "partial_mixing",
        "--out",
        b.to_str().unwrap(),
    ]);
    multiwalk(&[
        "report",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--out",
        merged.to_str().unwrap(),
    ]);
    let load = |d: &Path| ReportBundle::load(&d.join("bundle.json")).unwrap();
    let (a, b, m) = (load(&a), load(&b), load(&merged));
    assert_eq!(m.bounds.len(), a.bounds.len() + b.bounds.len());
    assert_eq!(m.estimates.len(), a.estimates.len());
}

#[test]
fn verify_runs_a_single_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(&["verify", "--suite", "c7", "--out", dir.path().to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("criterion 7 ("), "{text}");
    assert!(dir.path().join("verify.json").exists());
}

#[test]
fn bad_input_exits_with_code_two() {
    assert_eq!(
        multiwalk(&["estimate", "--family", "cycle:8", "--k", "2", "--start", "vertex:99"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(multiwalk(&["sweep"]).status.code(), Some(2));
    assert_eq!(multiwalk(&["verify", "--suite", "c42"]).status.code(), Some(2));
}
