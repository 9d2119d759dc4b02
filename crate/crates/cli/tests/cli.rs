//! End-to-end runs of the `hardy` binary: exit codes, output schema,
//! determinism, and config-file/flag precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_sweep_passes_and_reports() {
    let out = hardy(&["verify", "--dim", "3", "--mu", "mu0,mu0+0.5,0,1,5"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("# tool: hardy v"));
    assert!(text.contains("# columns: identity,dim,mu,xi"));
    assert!(text.contains("# violations = 0"));
    // 5 mu values x 5 library functions x 2 identities
    let rows = text
        .lines()
        .filter(|l| l.starts_with("fundamental,") || l.starts_with("green,"))
        .count();
    assert_eq!(rows, 50);
    for line in text.lines().filter(|l| l.starts_with("fundamental,")) {
        assert!(line.ends_with(",true"), "failing row: {line}");
    }
}

#[test]
fn verify_critical_branch() {
    let out = hardy(&["verify", "--dim", "3", "--mu", "mu0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# violations = 0"));
}

#[test]
fn invalid_dimension_is_config_failure() {
    let out = hardy(&["verify", "--dim", "1", "--mu", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid dimension"));
}

#[test]
fn solve_constant_source_matches_closed_form() {
    let out = hardy(&[
        "solve", "--dim", "3", "--mu", "2", "--f", "const", "--k", "0", "--grid", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // r = 0.5 row: u = (r - r²)/4 = 0.0625
    let row = text
        .lines()
        .find(|l| l.starts_with("0.5,"))
        .expect("0.5 row");
    let u: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((u - 0.0625).abs() < 1e-10);
    assert!(text.contains("# status = ok"));
}

#[test]
fn solve_green_table() {
    let out = hardy(&[
        "solve", "--dim", "3", "--mu", "2", "--f", "zero", "--k", "1", "--grid", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("0.5,")).unwrap();
    let u: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((u - 3.5).abs() < 1e-9);
    // footer carries the extracted coefficient
    let k_hat_line = text.lines().find(|l| l.starts_with("# k_hat =")).unwrap();
    let k_hat: f64 = k_hat_line
        .rsplit('=')
        .next()
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((k_hat - 1.0).abs() < 1e-6);
}

#[test]
fn solve_nonintegrable_source_exits_one() {
    let out = hardy(&[
        "solve",
        "--dim",
        "3",
        "--mu",
        "2",
        "--f",
        "power:-3.5",
        "--k",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("# status = no-solution"));
    assert!(text.contains("# divergence_model = power"));
}

#[test]
fn probe_eigen_matches_reference_column() {
    let out = hardy(&[
        "probe",
        "eigen",
        "--dim",
        "3",
        "--a0",
        "1",
        "--eps",
        "1e-2,1e-3,1e-4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in text
        .lines()
        .filter(|l| l.starts_with("0.0") || l.starts_with("1e-4"))
    {
        let cells: Vec<&str> = line.split(',').collect();
        let rel: f64 = cells[4].parse().unwrap();
        assert!(rel < 5e-3, "row {line}");
    }
    assert!(text.contains("# hardy_constant = 0.25"));
}

#[test]
fn probe_oscillation_ratio() {
    let out = hardy(&["probe", "oscillation", "--dim", "3", "--mu", "-1.25"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let predicted = text
        .lines()
        .find(|l| l.starts_with("# predicted_ratio ="))
        .unwrap();
    let v: f64 = predicted
        .rsplit('=')
        .next()
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((v - std::f64::consts::PI.exp()).abs() < 1e-9);
}

#[test]
fn probe_blowup_log_fit() {
    let out = hardy(&[
        "probe", "blowup", "--dim", "3", "--mu", "2", "--f", "power:0", "--x0", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# growth_model = log"));
}

#[test]
fn green_bounds_no_violations() {
    let out = hardy(&["green", "--dim", "3", "--mu", "2", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# violations = 0"));
}

#[test]
fn green_single_evaluation() {
    let out = hardy(&[
        "green",
        "--dim",
        "3",
        "--mu",
        "0",
        "--eval",
        "0.3,0.6,0.2",
        "--max-mode",
        "160",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("0.3,")).unwrap();
    let v: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    // classical image-charge value
    let (r, s, c) = (0.3f64, 0.6, 0.2);
    let d = (r * r + s * s - 2.0 * r * s * c).sqrt();
    let d_star = (r * r * s * s + 1.0 - 2.0 * r * s * c).sqrt();
    let exact = (1.0 / d - 1.0 / d_star) / (4.0 * std::f64::consts::PI);
    assert!((v - exact).abs() < 1e-6);
}

#[test]
fn selftest_passes() {
    let out = hardy(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# all_pass = true"));
}

#[test]
fn identical_configs_are_byte_identical() {
    let args = ["green", "--dim", "3", "--mu", "2", "--samples", "60"];
    let a = hardy(&args);
    let b = hardy(&args);
    assert_eq!(a.stdout, b.stdout);

    let v1 = hardy(&["verify", "--dim", "3", "--mu", "2"]);
    let v2 = hardy(&["verify", "--dim", "3", "--mu", "2"]);
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path: PathBuf = dir.path().join("run.conf");
    std::fs::write(
        &cfg_path,
        "dim = 3\nmu = 2\nsource = const\nk = 0\ngrid = 4\n# comment\n",
    )
    .unwrap();
    let base = hardy(&["--config", cfg_path.to_str().unwrap(), "solve"]);
    assert_eq!(
        base.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&base.stderr)
    );
    assert!(stdout(&base).contains("# grid = 4"));

    // flag overrides the file value
    let over = hardy(&[
        "--config",
        cfg_path.to_str().unwrap(),
        "solve",
        "--grid",
        "6",
    ]);
    assert_eq!(over.status.code(), Some(0));
    assert!(stdout(&over).contains("# grid = 6"));
}

#[test]
fn json_mirror_carries_same_data() {
    let out = hardy(&[
        "solve", "--dim", "3", "--mu", "2", "--f", "const", "--grid", "4", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["command"], "solve");
    assert_eq!(doc["columns"][0], "r");
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let u: f64 = rows[1][1].as_str().unwrap().parse().unwrap();
    assert!((u - 0.0625).abs() < 1e-10);
    assert_eq!(doc["footer"]["status"], "ok");
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = hardy(&[
        "verify",
        "--dim",
        "3",
        "--mu",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# violations = 0"));
}

#[test]
fn worker_count_env_does_not_change_output() {
    let args = ["verify", "--dim", "3", "--mu", "mu0,0,2"];
    let one = Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .env("HARDY_WORKERS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .env("HARDY_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
