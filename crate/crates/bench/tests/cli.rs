use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const SMALL: &str = "\
name = small
problem = cycle-quadratic
n = 20
domain = simplex
methods = axgd, agd, gd
sigma = 4
L = 4
steps = 50
eps_eta = 0, 0.01
num_seeds = 2
";

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axgd-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn run_config(dir: &TempDir, text: &str, out: &str, extra: &[&str]) -> Output {
    let cfg = write(dir.path(), &format!("{out}.cfg"), text);
    let out = dir.path().join(out);
    let mut args = vec!["run", "--config", &cfg, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    bench(&args)
}

fn rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path)
        .unwrap()
        .records()
        .map(|r| r.unwrap())
        .collect()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for out in ["a", "b"] {
        let o = run_config(&dir, SMALL, out, &[]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let read = |d: &str, f: &str| fs::read(dir.path().join(d).join(f)).unwrap();
    assert_eq!(read("a", "small.csv"), read("b", "small.csv"));
    assert_eq!(read("a", "small.json"), read("b", "small.json"));

    // Thread count does not change the bytes either.
    let o = run_config(&dir, SMALL, "c", &["--threads", "1"]);
    assert!(o.status.success());
    assert_eq!(read("a", "small.csv"), read("c", "small.csv"));
}

#[test]
fn seed_flag_overrides_config() {
    let dir = TempDir::new().unwrap();
    run_config(&dir, SMALL, "a", &[]);
    run_config(&dir, SMALL, "b", &["--seed", "7"]);
    let a = fs::read(dir.path().join("a/small.csv")).unwrap();
    let b = fs::read(dir.path().join("b/small.csv")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn dropping_a_method_leaves_other_cells_unchanged() {
    let dir = TempDir::new().unwrap();
    run_config(&dir, SMALL, "all", &[]);
    let fewer = SMALL.replace("methods = axgd, agd, gd", "methods = axgd, gd");
    run_config(&dir, &fewer, "fewer", &[]);
    let all = rows(&dir.path().join("all/small.csv"));
    let fewer = rows(&dir.path().join("fewer/small.csv"));
    let keep: Vec<_> = all.into_iter().filter(|r| &r[0] != "agd").collect();
    assert_eq!(keep, fewer);
}

#[test]
fn csv_round_trips() {
    let dir = TempDir::new().unwrap();
    run_config(&dir, SMALL, "a", &[]);
    let mut reader = csv::Reader::from_path(dir.path().join("a/small.csv")).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[0], "method");
    assert_eq!(header.last().unwrap(), "wall_time_ns");
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    // 3 methods × 2 noise levels × 2 seeds × 50 steps.
    assert_eq!(records.len(), 3 * 2 * 2 * 50);
    for r in &records {
        let k: usize = r[3].parse().unwrap();
        let queries: usize = r[11].parse().unwrap();
        let per_step = if &r[0] == "gd" { 1 } else { 2 };
        assert_eq!(queries, per_step * k);
        let upper: f64 = r[6].parse().unwrap();
        assert!(upper.is_finite());
        // Shortest round-trip formatting: reprinting gives the same text.
        assert_eq!(format!("{:.16e}", upper), &r[6]);
    }
    let json: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("a/small.json")).unwrap()).unwrap();
    assert_eq!(json["cells"].as_array().unwrap().len(), 6);
}

#[test]
fn validate_reports_every_problem() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.cfg", SMALL);
    assert!(bench(&["validate", "--config", &good]).status.success());

    let bad = write(dir.path(), "bad.cfg", "n = 0\ncolour = red\nsteps = many\n");
    let o = bench(&["validate", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("colour"), "{err}");
    assert!(err.contains("steps"), "{err}");
}

#[test]
fn missing_config_is_an_io_error() {
    let o = bench(&["validate", "--config", "/nonexistent/x.cfg"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = TempDir::new().unwrap();
    let blocker = write(dir.path(), "file", "");
    let cfg = write(dir.path(), "s.cfg", SMALL);
    let out = format!("{blocker}/sub");
    let o = bench(&["run", "--config", &cfg, "--out", &out]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn numeric_failure_still_writes_output() {
    let dir = TempDir::new().unwrap();
    let text = "\
name = blowup
problem = holder-power
n = 4
nu = 1
domain = unconstrained
methods = axgd, gd
schedule = hoelder
c_override = 1e300
x0 = 1, 1, 1, 1
steps = 20
";
    let o = run_config(&dir, text, "out", &[]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let records = rows(&dir.path().join("out/blowup.csv"));
    assert!(records.iter().any(|r| &r[0] == "gd"));
}
