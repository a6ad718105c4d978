//! End-to-end checks of the `ouvg` binary: exit codes, output schemas, and
//! the example configurations shipped in `docs/`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_ouvg")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ouvg-io-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let output = Command::new(exe())
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

#[test]
fn simulate_writes_paths_csv() {
    let dir = temp_dir("simulate");
    let (code, _, _) = run_in(
        &dir,
        &[
            "simulate", "--steps", "10", "--paths", "3", "--out", "p.csv", "--quiet",
        ],
    );
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(dir.join("p.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "path_id,t,value");
    assert_eq!(lines.count(), 3 * 11);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validate_exit_codes_follow_threshold() {
    let dir = temp_dir("validate");
    let ok = run_in(
        &dir,
        &["validate", "--paths", "20000", "--seed", "5", "--quiet"],
    );
    assert_eq!(ok.0, 0, "stderr: {}", ok.2);
    let report = std::fs::read_to_string(dir.join("moments.csv")).unwrap();
    assert!(report.starts_with("stat,estimated,stderr,theoretical,z\n"));
    assert_eq!(report.lines().count(), 5);

    // An absurd threshold forces a validation failure: exit code 1.
    let fail = run_in(
        &dir,
        &[
            "validate",
            "--paths",
            "20000",
            "--seed",
            "5",
            "--threshold",
            "0.001",
        ],
    );
    assert_eq!(fail.0, 1, "stdout: {}", fail.1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_errors_exit_2_without_output() {
    let dir = temp_dir("config-err");

    // Domain violation in a parameter.
    let bad = run_in(&dir, &["simulate", "--nu", "-0.5", "--out", "x.csv"]);
    assert_eq!(bad.0, 2, "stderr: {}", bad.2);
    assert!(!dir.join("x.csv").exists());

    // Malformed config file.
    std::fs::write(dir.join("bad.conf"), "command = simulate\nnu banana\n").unwrap();
    let malformed = run_in(&dir, &["--config", "bad.conf"]);
    assert_eq!(malformed.0, 2);

    // Unknown command in the config.
    std::fs::write(dir.join("cmd.conf"), "command = frobnicate\n").unwrap();
    let unknown = run_in(&dir, &["--config", "cmd.conf"]);
    assert_eq!(unknown.0, 2);

    // Missing command entirely.
    let missing = run_in(&dir, &[] as &[&str]);
    assert_eq!(missing.0, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn io_errors_exit_3() {
    let dir = temp_dir("io-err");
    let (code, _, stderr) = run_in(
        &dir,
        &[
            "simulate",
            "--steps",
            "4",
            "--out",
            "no-such-dir/deep/p.csv",
            "--quiet",
        ],
    );
    assert_eq!(code, 3, "stderr: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn pricing_commands_write_price_schema() {
    let dir = temp_dir("pricing");
    let (code, _, stderr) = run_in(
        &dir,
        &[
            "price-asian",
            "--paths",
            "500",
            "--fixings",
            "12",
            "--quiet",
        ],
    );
    assert_eq!(code, 0, "stderr: {stderr}");
    let text = std::fs::read_to_string(dir.join("price.csv")).unwrap();
    assert!(text.starts_with("n_paths,price,stdev,error,cpu_seconds,cpu_paths_seconds\n"));

    let (code, _, stderr) = run_in(
        &dir,
        &[
            "price-storage",
            "--paths",
            "200",
            "--steps",
            "60",
            "--volume-steps",
            "20",
            "--a-in",
            "0.1",
            "--a-w",
            "0.1",
            "--out",
            "storage.csv",
            "--quiet",
        ],
    );
    assert_eq!(code, 0, "stderr: {stderr}");
    let text = std::fs::read_to_string(dir.join("storage.csv")).unwrap();
    assert_eq!(text.lines().count(), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn curve_flag_reaches_the_model() {
    let dir = temp_dir("curve");
    let (code, _, stderr) = run_in(
        &dir,
        &[
            "price-asian",
            "--paths",
            "500",
            "--fixings",
            "4",
            "--maturity",
            "1",
            "--strike",
            "0",
            "--curve",
            "0:15,1:17",
            "--quiet",
        ],
    );
    assert_eq!(code, 0, "stderr: {stderr}");
    let text = std::fs::read_to_string(dir.join("price.csv")).unwrap();
    let price: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    // K = 0: price equals the average forward over the fixings, ~16.25 on
    // the upward-sloping curve, far from the flat default 15.
    assert!(price > 15.5, "curve ignored? price {price}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn docs_configs_run_end_to_end() {
    let docs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs");
    let mut configs: Vec<PathBuf> = std::fs::read_dir(&docs)
        .expect("docs directory with example configs")
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension().map(|x| x == "conf").unwrap_or(false)).then_some(p)
        })
        .collect();
    configs.sort();
    assert!(!configs.is_empty(), "no example configs found in docs/");

    let dir = temp_dir("docs");
    for config in configs {
        let started = Instant::now();
        let (code, _, stderr) = run_in(&dir, &["--config", config.to_str().unwrap(), "--quiet"]);
        let elapsed = started.elapsed().as_secs_f64();
        assert_eq!(code, 0, "{} failed: {stderr}", config.display());
        assert!(
            elapsed < 300.0,
            "{} took {elapsed:.0}s, budget is 5 minutes",
            config.display()
        );
    }
    std::fs::remove_dir_all(&dir).ok();
}
