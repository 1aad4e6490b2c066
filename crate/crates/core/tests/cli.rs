//! End-to-end checks of the `qqsim` binary: exit codes, file outputs,
//! determinism of emitted bytes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qqsim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qqsim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn simulate_writes_outputs_and_reports_stats() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "grid": { "t_end": 2.0, "step": 0.01 },
            "outputs": { "csv": "trace.csv", "svg": "trace.svg", "stats": "stats.json" }
        }"#,
    );
    let out = qqsim(&["simulate", "--config", &config], dir.path());
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("samples: 201"), "stdout: {stdout}");
    // Reference-window statistics for the default setup.
    assert!(stdout.contains("min=0.393"), "stdout: {stdout}");
    assert!(stdout.contains("max=0.500000"), "stdout: {stdout}");
    assert!(stdout.contains("time_average=0.462"), "stdout: {stdout}");

    let csv = fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,negativity"));
    let first = lines.next().unwrap();
    assert!(
        first.starts_with("0.00000000000e0,5.0000000"),
        "row: {first}"
    );
    assert_eq!(csv.lines().count(), 202);

    let svg = fs::read_to_string(dir.path().join("trace.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polyline"));

    let stats: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("stats.json")).unwrap()).unwrap();
    assert!((stats["max"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((stats["time_average"].as_f64().unwrap() - 0.4628).abs() < 0.001);
    assert_eq!(stats["argmax_t"].as_f64().unwrap(), 0.0);
}

#[test]
fn simulate_output_bytes_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "model": { "j_x": 1.0, "j_y": 5.0, "j_z": 10.0 },
            "grid": { "t_end": 1.0, "step": 0.02 },
            "outputs": { "csv": "a.csv", "svg": "a.svg", "stats": "a.json" }
        }"#,
    );
    assert!(qqsim(&["simulate", "--config", &config], dir.path())
        .status
        .success());
    let first: Vec<Vec<u8>> = ["a.csv", "a.svg", "a.json"]
        .iter()
        .map(|f| fs::read(dir.path().join(f)).unwrap())
        .collect();
    assert!(qqsim(&["simulate", "--config", &config], dir.path())
        .status
        .success());
    for (k, f) in ["a.csv", "a.svg", "a.json"].iter().enumerate() {
        assert_eq!(
            first[k],
            fs::read(dir.path().join(f)).unwrap(),
            "{f} changed between runs"
        );
    }
}

#[test]
fn validate_passes_on_the_builtin_references() {
    let dir = tempfile::tempdir().unwrap();
    let out = qqsim(&["validate"], dir.path());
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("result: PASS (72/72"), "stdout: {stdout}");
    assert_eq!(stdout.matches(") PASS").count(), 72);
}

#[test]
fn sweep_tabulates_stats_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", "{}");
    let out = qqsim(
        &[
            "sweep", "--config", &config, "--param", "d_z", "--values", "1,2",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "d_z,min,max,time_average");
    assert_eq!(lines.len(), 3);

    let avg = |line: &str| -> f64 { line.rsplit(',').next().unwrap().parse().unwrap() };
    assert!(
        avg(lines[1]) > avg(lines[2]),
        "average negativity should fall with d_z: {stdout}"
    );
}

#[test]
fn invalid_config_exits_one_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.json", r#"{ "model": { "j_q": 1.0 } }"#);
    let out = qqsim(&["simulate", "--config", &config], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("j_q"), "stderr: {stderr}");
}

#[test]
fn missing_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = qqsim(&["simulate", "--config", "no-such-file.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "grid": { "t_end": 0.1, "step": 0.05 },
            "outputs": { "csv": "missing-dir/trace.csv" }
        }"#,
    );
    let out = qqsim(&["simulate", "--config", &config], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("cannot write"), "stderr: {stderr}");
}

#[test]
fn unknown_sweep_param_exits_one_listing_valid_names() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", "{}");
    let out = qqsim(
        &[
            "sweep", "--config", &config, "--param", "j_q", "--values", "1",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("unknown sweep parameter"),
        "stderr: {stderr}"
    );
    assert!(stderr.contains("d_z"), "stderr: {stderr}");
}

#[test]
fn transverse_dm_components_warn_but_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "model": { "d_x": 0.5 },
            "grid": { "t_end": 0.1, "step": 0.05 }
        }"#,
    );
    let out = qqsim(&["simulate", "--config", &config], dir.path());
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("warning"), "stderr: {stderr}");
    assert!(stderr.contains("d_x"), "stderr: {stderr}");
}

#[test]
fn degenerate_initial_state_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // Opposite-weight identical branches cancel exactly.
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "initial_state": { "alpha1": 1.0, "alpha2": 1.0, "beta1": 1.0, "beta2": 1.0,
                               "theta": 2.356194490192345, "phi": 0.0 }
        }"#,
    );
    let out = qqsim(&["simulate", "--config", &config], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("branches cancel"), "stderr: {stderr}");
}
