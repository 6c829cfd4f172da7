//! Black-box checks of the `phaseless` binary: exit codes, determinism of
//! output files, and machine-readable error records.

use std::path::Path;
use std::process::Command;

use phaseless::cli::{ExperimentConfig, SignalSource};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phaseless"))
}

fn data_file(name: &str) -> String {
    format!("{}/data/frames/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn validate_frame_builtins_pass() {
    for builtin in ["k2", "sic3"] {
        let output = bin()
            .args(["validate-frame", "--builtin", builtin])
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "builtin {builtin}");
        let report: serde_json::Value =
            serde_json::from_slice(&output.stdout).expect("stdout is a JSON report");
        assert_eq!(report["pass"], serde_json::json!(true));
    }
}

#[test]
fn validate_frame_bundled_files_pass() {
    for name in ["paper_k2.json", "sic_k3.json"] {
        let output = bin()
            .args(["validate-frame", "--frame", &data_file(name)])
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "file {name}");
    }
}

#[test]
fn validate_frame_honors_tolerance_flag() {
    // The builtin frame carries ~1 ulp of roundoff, so an absurd tolerance
    // must fail it, with exit code 1 and a JSON record on stderr.
    let output = bin()
        .args(["validate-frame", "--builtin", "k2", "--tol", "1e-30"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let record: serde_json::Value = serde_json::from_slice(&output.stderr).unwrap();
    assert_eq!(record["error"], serde_json::json!("failure"));
}

#[test]
fn corrupted_frame_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"k\": 2, \"m\":").unwrap();
    let output = bin()
        .args(["validate-frame", "--frame"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let record: serde_json::Value = serde_json::from_slice(&output.stderr).unwrap();
    assert_eq!(record["error"], serde_json::json!("usage"));
}

#[test]
fn invalid_frame_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("invalid.json");
    // Well-formed file, broken invariants (non-unit vectors).
    std::fs::write(
        &path,
        r#"{"k":2,"m":4,"vectors":[
            [[2.0,0.0],[0.0,0.0]],
            [[0.0,0.0],[2.0,0.0]],
            [[0.0,2.0],[0.0,0.0]],
            [[0.0,0.0],[0.0,2.0]]]}"#,
    )
    .unwrap();
    let output = bin()
        .args(["validate-frame", "--frame"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["pass"], serde_json::json!(false));
}

fn write_config(dir: &Path, mutate: impl FnOnce(&mut ExperimentConfig)) -> std::path::PathBuf {
    let mut config = ExperimentConfig {
        n_range: (0, 14),
        signal: SignalSource::Random {
            count: 16,
            magnitude: 1.0,
            seed: 11,
        },
        output_dir: Some(dir.join("out")),
        ..Default::default()
    };
    mutate(&mut config);
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_string_pretty(&config).unwrap()).unwrap();
    path
}

#[test]
fn e2e_runs_green_and_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), |_| {});
    let output = bin().args(["e2e", "--config"]).arg(&config).output().unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    for file in ["signal.json", "measurements.json", "recovery.json", "metrics.csv"] {
        assert!(dir.path().join("out").join(file).exists(), "{file}");
    }
    let metrics = std::fs::read_to_string(dir.path().join("out/metrics.csv")).unwrap();
    assert!(metrics.starts_with(phaseless::cli::METRICS_CSV_HEADER));
    assert!(metrics.lines().nth(1).unwrap().ends_with(",0"), "no phase breaks");
}

#[test]
fn e2e_output_files_are_byte_identical_across_runs() {
    let run = |root: &Path| -> Vec<Vec<u8>> {
        let config = write_config(root, |c| c.noise_sigma = 0.02);
        let output = bin().args(["e2e", "--config"]).arg(&config).output().unwrap();
        assert_eq!(output.status.code(), Some(0));
        ["signal.json", "measurements.json", "recovery.json", "metrics.csv"]
            .iter()
            .map(|f| std::fs::read(root.join("out").join(f)).unwrap())
            .collect()
    };
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(run(a.path()), run(b.path()));
}

#[test]
fn simulate_then_reconstruct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), |_| {});
    let output = bin()
        .args(["simulate", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let out = dir.path().join("out");
    let output = bin()
        .args(["reconstruct", "--measurements"])
        .arg(out.join("measurements.json"))
        .arg("--truth")
        .arg(out.join("signal.json"))
        .args(["--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("rel_l2"), "stdout: {stdout}");
    assert!(out.join("metrics.csv").exists());
}

#[test]
fn augmented_e2e_runs_green() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), |c| {
        c.mode = phaseless::reconstruct::Mode::AugmentedCorollary;
        c.t = 5.0;
        c.t_prime = Some(5.6);
        c.shift_h = 2.0;
        c.n_range = (-15, 14);
        c.signal = SignalSource::Random {
            count: 12,
            magnitude: 0.4,
            seed: 2,
        };
    });
    let output = bin().args(["e2e", "--config"]).arg(&config).output().unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let out = dir.path().join("out");
    assert!(out.join("augmentation.json").exists());
    assert!(out.join("xtilde.json").exists());
    let aug: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("augmentation.json")).unwrap())
            .unwrap();
    let h = aug["strip_height_h"].as_f64().unwrap();
    assert!(h > 0.0 && h < 2.0, "strip height {h} must be cleared by |h|=2");
}

#[test]
fn rate_table_prints_reference_rows() {
    let output = bin()
        .args(["rate-table", "--k", "2", "--a", "1", "--oversampling", "1.0,1.1"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "k,a,oversampling,rate_ratio");
    assert_eq!(lines[1], "2,1,1.0,4.0");
    assert_eq!(lines[2], "2,1,1.1,4.4");
}

#[test]
fn convergence_requires_n_list() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), |_| {});
    let output = bin()
        .args(["convergence", "--config"])
        .arg(&config)
        .args(["--n-list", ""])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn convergence_csv_reaches_exactness() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), |c| c.n_range = (-10, 10));
    let out_csv = dir.path().join("convergence.csv");
    let output = bin()
        .args(["convergence", "--config"])
        .arg(&config)
        .args(["--n-list", "2,6,12"])
        .arg("--out")
        .arg(&out_csv)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let csv = std::fs::read_to_string(&out_csv).unwrap();
    let medians: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(medians.len(), 3);
    assert!(medians[0] >= medians[1] && medians[1] >= medians[2]);
    assert!(medians[2] <= 1e-10, "full-support truncation is exact");
}

#[test]
fn output_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), |c| c.output_dir = None);
    let env_out = dir.path().join("env-out");
    let output = bin()
        .args(["simulate", "--config"])
        .arg(&config)
        .env(phaseless::cli::OUTPUT_DIR_ENV, &env_out)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(env_out.join("measurements.json").exists());
}
