use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flate2::write::GzEncoder;
use flate2::Compression;
use serde_json::Value;
use tempfile::TempDir;

fn corepeel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corepeel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn clique_lines(nodes: std::ops::Range<u64>) -> String {
    let v: Vec<u64> = nodes.collect();
    let mut s = String::new();
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            s.push_str(&format!("{a}\t{b}\n"));
        }
    }
    s
}

fn two_k5(dir: &TempDir) -> PathBuf {
    let text = format!("# two cliques\n{}{}4 5\n", clique_lines(0..5), clique_lines(5..10));
    write(dir, "two_k5.txt", &text)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_finds_both_cliques() {
    let dir = TempDir::new().unwrap();
    let input = two_k5(&dir);
    let v = json(&corepeel(&["run", s(&input), "--min-size", "5", "--density", "1", "--radius", "1"]));
    let comms = v["communities"].as_array().unwrap();
    assert_eq!(comms.len(), 2);
    assert_eq!(comms[0]["nodes"], serde_json::json!([0, 1, 2, 3, 4]));
    assert_eq!(comms[1]["nodes"], serde_json::json!([5, 6, 7, 8, 9]));
    assert!(v["timings"]["total_s"].as_f64().is_some());
}

#[test]
fn single_edge_is_a_community_of_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "edge.txt", "7 9\n");
    let v = json(&corepeel(&["run", s(&input), "--min-size", "2", "--density", "1", "--radius", "1"]));
    assert_eq!(v["communities"][0]["nodes"], serde_json::json!([7, 9]));
}

#[test]
fn exact_and_float_agree() {
    let dir = TempDir::new().unwrap();
    let input = two_k5(&dir);
    let base = ["run", s(&input), "--min-size", "4", "--density", "0.7", "--radius", "2", "--no-timings"];
    let float = corepeel(&base);
    let mut with_exact = base.to_vec();
    with_exact.push("--exact");
    let exact = corepeel(&with_exact);
    assert_eq!(json(&float), json(&exact));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let input = two_k5(&dir);
    for args in [
        vec!["run", s(&input), "--min-size", "5", "--density", "1", "--radius", "3"],
        vec!["run", s(&input), "--min-size", "5", "--density", "1.5", "--radius", "1"],
        vec!["run", s(&input), "--min-size", "1", "--density", "1", "--radius", "1"],
        vec!["run", s(&input), "--min-size", "5", "--density", "0.6", "--radius", "1", "--delta-low", "0.8"],
        vec!["frobnicate"],
    ] {
        let out = corepeel(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn data_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "1 2\n3 x\n");
    let out = corepeel(&["stats", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = dir.path().join("missing.txt");
    assert_eq!(corepeel(&["stats", s(&missing)]).status.code(), Some(1));
}

#[test]
fn stats_of_comment_only_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.txt", "# nothing\n\n");
    let out = corepeel(&["stats", s(&input), "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["nodes"], 0);
    assert_eq!(v["arcs"], 0);
}

#[test]
fn gzip_input() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("two_k5.txt.gz");
    let mut enc = GzEncoder::new(std::fs::File::create(&path).unwrap(), Compression::default());
    enc.write_all(format!("{}{}", clique_lines(0..5), clique_lines(5..10)).as_bytes()).unwrap();
    enc.finish().unwrap();
    let v = json(&corepeel(&["stats", s(&path), "--format", "json"]));
    assert_eq!(v["dataset"], "two_k5");
    assert_eq!(v["edges"], 20);
}

fn sparse_host(dir: &TempDir) -> PathBuf {
    // A 600-node ring with chords: sparse, low core numbers.
    let mut text = String::new();
    for i in 0..600u64 {
        text.push_str(&format!("{i} {}\n", (i + 1) % 600));
        text.push_str(&format!("{i} {}\n", (i + 7) % 600));
    }
    write(dir, "ring.txt", &text)
}

#[test]
fn bench_tsv_has_mean_row_and_output_file() {
    let dir = TempDir::new().unwrap();
    let input = sparse_host(&dir);
    let out_path = dir.path().join("bench.tsv");
    let out = corepeel(&[
        "bench", s(&input), "--density", "0.8", "--radius", "1", "--trials", "3", "--seed", "5",
        "--format", "tsv", "--output", s(&out_path),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "dataset\tsize\tdensity\tradius\tprecision\trecall\tfmeasure\tnum_embedded");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("mean\t"));
}

#[test]
fn bench_json_is_reproducible_and_thread_independent() {
    let dir = TempDir::new().unwrap();
    let input = sparse_host(&dir);
    let args = ["bench", s(&input), "--density", "0.8", "--radius", "2", "--trials", "4", "--no-timings"];
    let a = corepeel(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_corepeel"))
        .args(args)
        .env("COREPEEL_THREADS", "3")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let seeds: Vec<u64> = v["trials"].as_array().unwrap().iter().map(|r| r["rng_seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, vec![1, 2, 3, 4]);
    assert_eq!(v["aggregate"]["trials"], 4);
}

#[test]
fn run_json_is_byte_identical_without_timings() {
    let dir = TempDir::new().unwrap();
    let input = sparse_host(&dir);
    let args = ["run", s(&input), "--min-size", "3", "--density", "0.5", "--radius", "2", "--no-timings"];
    assert_eq!(corepeel(&args).stdout, corepeel(&args).stdout);
}

#[test]
fn bench_accepts_quasi_clique_plants() {
    let dir = TempDir::new().unwrap();
    let input = sparse_host(&dir);
    let v = json(&corepeel(&[
        "bench", s(&input), "--density", "0.5", "--radius", "2", "--plant-size", "10", "--quasi-clique",
        "--no-timings",
    ]));
    assert_eq!(v["trials"][0]["plant_size"], 10);
    assert_eq!(v["trials"][0]["num_embedded"], 1);
}
