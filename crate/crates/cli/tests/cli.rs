//! Black-box tests of the `slflow` binary: exit codes, file outputs,
//! JSON round-trips and flag/config precedence.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn slflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn slflow_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slflow"))
        .args(args)
        .env("SLFLOW_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&slflow(&["--help"])), 0);
    assert_eq!(code(&slflow(&["--version"])), 0);
    assert_eq!(code(&slflow(&["flow", "--help"])), 0);
}

#[test]
fn unknown_arguments_exit_one() {
    assert_eq!(code(&slflow(&["no-such-command"])), 1);
    assert_eq!(code(&slflow(&["flow", "--no-such-flag"])), 1);
    assert_eq!(code(&slflow(&[])), 1);
}

#[test]
fn demo_passes_and_emits_a_full_certificate() {
    let out = slflow(&["necklace-demo", "--json"]);
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["passed"], Value::Bool(true));
    let checks = cert["checks"].as_array().expect("checks array");
    assert_eq!(checks.len(), 6);
    let names: Vec<&str> = checks
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "wall-constraints",
            "intersection-table",
            "angle-sums",
            "phase-alignment",
            "neck-solve",
            "betti"
        ]
    );
    assert!(checks.iter().all(|c| c["passed"] == Value::Bool(true)));
}

#[test]
fn demo_off_the_wall_fails_the_first_check() {
    let out = slflow(&[
        "necklace-demo",
        "--point",
        "0.40,0.90,0.50,0.87,0.50,0.866",
    ]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("wall-constraints"), "stderr: {err}");
}

#[test]
fn flow_rejects_a_lower_half_plane_point() {
    let out = slflow(&["flow", "--point", "0.5,-0.9,0.5,0.87,0.5,0.866"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn flow_with_equal_endpoints_writes_one_sample() {
    let dir = tempfile::tempdir().expect("tempdir");
    let csv = dir.path().join("still.csv");
    let out = slflow(&[
        "flow",
        "--mu-end",
        "1.0",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv).expect("csv written");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "header plus the single sample");
    assert!(lines[0].starts_with("mu,re_tau1,im_tau1"));
    assert!(!text.contains('\r'));
}

#[test]
fn out_dir_variable_redirects_relative_paths_only() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = slflow_in(dir.path(), &["flow", "--mu-end", "1.01", "--csv", "traj.csv"]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("traj.csv").is_file());

    let absolute = dir.path().join("abs.csv");
    let other = tempfile::tempdir().expect("tempdir");
    let out = slflow_in(
        other.path(),
        &["flow", "--mu-end", "1.01", "--csv", absolute.to_str().unwrap()],
    );
    assert_eq!(code(&out), 0);
    assert!(absolute.is_file(), "absolute path ignores the variable");
    assert!(!other.path().join("abs.csv").exists());
}

#[test]
fn smooth_builtin_assigns_unit_necks() {
    let out = slflow(&["smooth"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["feasible"], Value::Bool(true));
    let sizes = report["assignment"].as_array().unwrap();
    assert_eq!(sizes.len(), 3);
    assert!(sizes.iter().all(|s| s.as_f64().unwrap() == 1.0));
    let exact = report["assignment_exact"].as_array().unwrap();
    assert!(exact.iter().all(|s| s.as_str().unwrap() == "1"));
}

#[test]
fn emitted_configuration_reloads_identically() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("necklace.json");
    let first = slflow(&["smooth", "--emit-config", path.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    let second = slflow(&["smooth", "--configuration", path.to_str().unwrap()]);
    assert_eq!(code(&second), 0);
    assert_eq!(stdout_json(&first), stdout_json(&second));
}

#[test]
fn infeasible_targets_exit_three() {
    // One directed intersection can only realize targets with the
    // orientation it carries; the reversed pair has no positive size.
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("path.json");
    let config = serde_json::json!({
        "components": [
            {"label": "A", "class": [1, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                     0, 0, 0, 0, 0, 0, 0, 0, 0, 0], "b1": 3},
            {"label": "B", "class": [0, 1, 0, 0, 0, 0, 0, 0, 0, 0,
                                     0, 0, 0, 0, 0, 0, 0, 0, 0, 0], "b1": 3}
        ],
        "intersections": [{"tail": 0, "head": 1}]
    });
    std::fs::write(&path, config.to_string()).expect("config written");
    let out = slflow(&[
        "smooth",
        "--configuration",
        path.to_str().unwrap(),
        "--targets",
        "-1,1",
    ]);
    assert_eq!(code(&out), 3);
    let report = stdout_json(&out);
    assert_eq!(report["feasible"], Value::Bool(false));
}

#[test]
fn kappa_search_honors_the_window() {
    let hit = slflow(&["kappa", "--kappa-target", "1.01"]);
    assert_eq!(code(&hit), 0);
    let report = stdout_json(&hit);
    assert_eq!(report["found"], Value::Bool(true));
    assert!(report["kappa_max"].as_f64().unwrap() >= 1.01);

    let miss = slflow(&["kappa", "--kappa-target", "10"]);
    assert_eq!(code(&miss), 3);
    let report = stdout_json(&miss);
    assert_eq!(report["found"], Value::Bool(false));
}

#[test]
fn neck_defaults_to_the_symmetric_cone() {
    let out = slflow(&["neck"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    let angles = report["angles"].as_array().unwrap();
    let third = core::f64::consts::PI / 3.0;
    for a in angles {
        assert!((a.as_f64().unwrap() - third).abs() < 1e-8);
    }
    let area = report["area"].as_f64().unwrap();
    assert!((area - 4.0 * core::f64::consts::PI).abs() < 1e-8);
}

#[test]
fn neck_inverse_solve_reports_its_round_trip() {
    let third = core::f64::consts::PI - 0.9 - 1.1;
    let phi = format!("0.9,1.1,{third}");
    let out = slflow(&["neck", "--phi", &phi, "--area", "13.0"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert!(report["round_trip_error"].as_f64().unwrap() < 1e-6);
    assert_eq!(report["target_angles"].as_array().unwrap().len(), 3);
    let angles = report["angles"].as_array().unwrap();
    assert!((angles[0].as_f64().unwrap() - 0.9).abs() < 1e-6);
    assert!((angles[1].as_f64().unwrap() - 1.1).abs() < 1e-6);

    let bad = slflow(&["neck", "--phi", "0.9,1.1,0.9", "--area", "13.0"]);
    assert_eq!(code(&bad), 1, "angles must sum to pi");
}

#[test]
fn angles_frames_file_round_trips_through_emit() {
    let dir = tempfile::tempdir().expect("tempdir");
    let frames = dir.path().join("frames.json");
    // Phase sums are multiples of pi, so both planes are calibrated.
    let phases_p = format!("0.3,0.5,{}", core::f64::consts::PI - 0.8);
    let phases_q = format!("1.1,0.7,{}", core::f64::consts::PI - 1.8);
    let first = slflow(&[
        "angles",
        "--phases-p",
        &phases_p,
        "--phases-q",
        &phases_q,
        "--orient-q",
        "-1",
        "--emit-frames",
        frames.to_str().unwrap(),
    ]);
    assert_eq!(code(&first), 0);
    let second = slflow(&["angles", "--frames", frames.to_str().unwrap()]);
    assert_eq!(code(&second), 0);
    assert_eq!(stdout_json(&first), stdout_json(&second));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("run.json");
    let config = serde_json::json!({
        "command": "flow",
        "mu_end": 1.2,
        "step": 5e-3
    });
    std::fs::write(&path, config.to_string()).expect("config written");

    let from_config = slflow(&["flow", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&from_config), 0);
    let report = stdout_json(&from_config);
    assert_eq!(report["mu_end"].as_f64().unwrap(), 1.2);
    assert_eq!(report["step"].as_f64().unwrap(), 5e-3);

    let overridden = slflow(&[
        "flow",
        "--config",
        path.to_str().unwrap(),
        "--mu-end",
        "1.1",
    ]);
    assert_eq!(code(&overridden), 0);
    let report = stdout_json(&overridden);
    assert_eq!(report["mu_end"].as_f64().unwrap(), 1.1);
    assert_eq!(report["step"].as_f64().unwrap(), 5e-3);

    let wrong_command = slflow(&["smooth", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&wrong_command), 1);
}

#[test]
fn betti_raw_graph_matches_the_rank_oracle() {
    let out = slflow(&[
        "betti",
        "--vertices",
        "4",
        "--edge",
        "0,1",
        "--edge",
        "1,2",
        "--edge",
        "2,0",
        "--edge",
        "0,3",
        "--b1",
        "2,3,1,4",
    ]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["agrees"], Value::Bool(true));
    assert_eq!(report["b0"].as_u64().unwrap(), 1);
    // b1 = sum(b1_v) + |E| - |V| + b0 = 10 + 4 - 4 + 1.
    assert_eq!(report["b1"].as_u64().unwrap(), 11);
}
