// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

fn qsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsl"))
        .args(args)
        .output()
        .expect("spawn qsl")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Parses a two-line CSV (header, row) into `(column, value)` pairs.
fn single_row(text: &str) -> Vec<(String, String)> {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',');
    let row = lines.next().unwrap().split(',');
    header.zip(row).map(|(h, v)| (h.to_string(), v.to_string())).collect()
}

fn field(row: &[(String, String)], name: &str) -> String {
    row.iter().find(|(h, _)| h == name).unwrap().1.clone()
}

fn float(row: &[(String, String)], name: &str) -> f64 {
    field(row, name).parse().unwrap()
}

#[test]
fn bound_damped_qubit() {
    let out = qsl(&["bound", "--model", "qubit", "--theta", "0", "--gamma", "1", "--omega", "1", "--lambda", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let row = single_row(&stdout(&out));
    assert_eq!(field(&row, "A"), "1.41421356");
    assert_eq!(field(&row, "E"), "1");
    assert!((float(&row, "t_star") - 0.532839).abs() < 1e-6);
}

#[test]
fn bound_qubit_gate_saturates_at_third_turn() {
    let out = qsl(&["bound", "--model", "qubit-gate", "--theta", "0", "--beta", "1.0471976", "--omega", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let row = single_row(&stdout(&out));
    assert!((float(&row, "t_star") - 0.5).abs() < 1e-6);
    assert_eq!(field(&row, "source"), "controlled");
    // The pi suffix lands exactly on the boundary.
    let out = qsl(&["bound", "--model", "qubit-gate", "--beta", "0.333333333333333333pi"]);
    let row = single_row(&stdout(&out));
    assert!((float(&row, "t_star") - 0.5).abs() < 1e-9);
}

#[test]
fn bound_dark_bell_state_is_unreachable() {
    let out = qsl(&["bound", "--model", "bell", "--state", "psi-minus", "--gamma", "1", "--lambda", "0.5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(field(&single_row(&stdout(&out)), "t_star"), "inf");

    let out = qsl(&["bound", "--model", "bell", "--state", "psi-minus", "--gamma", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["t_star"], "inf");
}

#[test]
fn bound_reports_lambda_max_for_horizon() {
    let out = qsl(&["bound", "--model", "qubit", "--gamma", "1", "--T", "0.5328399754"]);
    let row = single_row(&stdout(&out));
    assert!((float(&row, "lambda_max") - 1.0).abs() < 1e-6);
}

#[test]
fn invalid_parameters_exit_two_naming_range() {
    let out = qsl(&["bound", "--model", "qubit", "--theta", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = stderr(&out);
    assert!(msg.contains("theta") && msg.contains("[0, pi]"), "{msg}");

    let out = qsl(&["bound", "--model", "bell", "--gamma", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gamma"));

    let out = qsl(&["bound", "--model", "qubit", "--lambda", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[0, 1]"));

    let out = qsl(&["gate-map", "--horizons", "0.5,0.3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = qsl(&["bound", "--model", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_amplitude_damping() {
    let out = qsl(&["simulate", "--model", "qubit", "--gamma", "1", "--T", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,theta,fidelity,trace_err");
    assert_eq!(lines.len(), 1 + 1001 + 1);
    let last: Vec<f64> = lines[lines.len() - 2].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert!((last[2] - (-1f64).exp()).abs() < 1e-5);
    let summary = lines[lines.len() - 1];
    assert!(summary.starts_with("# ") && summary.ends_with("verdict=bound holds"), "{summary}");
}

#[test]
fn simulate_frozen_system_stays_put() {
    // Bell pair with γ = 0: H = 0 and M = 0.
    let out = qsl(&["simulate", "--model", "bell", "--gamma", "0", "--T", "0.2", "--dt", "0.01"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in text.lines().skip(1).filter(|l| !l.starts_with('#')) {
        assert_eq!(line.split(',').nth(1).unwrap(), "0", "{line}");
    }
    assert!(text.contains("margin=0.2 "));
}

#[test]
fn simulate_integration_failure_exits_three() {
    let out = qsl(&["simulate", "--model", "qubit", "--gamma", "100", "--theta", "0.3", "--T", "1", "--dt", "0.5"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn simulate_control_flags() {
    let out = qsl(&["simulate", "--model", "qubit", "--u", "0.5", "--T", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qsl(&["simulate", "--model", "qubit-gate", "--u", "0.5", "--T", "0.5", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["verdict"], "bound holds");
    let out = qsl(&["simulate", "--model", "qubit-gate", "--u", "2", "--u-max", "1", "--T", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweeps_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        &["sweep-lambda", "--gamma", "1"][..],
        &["gate-map", "--points", "30"][..],
        &["bell-sweep", "--points", "20"][..],
        &["verify", "--trials", "3", "--seed", "9"][..],
    ] {
        let mut files = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{}-{k}.csv", cmd[0]));
            let mut args = cmd.to_vec();
            args.extend(["--out", path.to_str().unwrap()]);
            let out = qsl(&args);
            assert!(out.status.success(), "{cmd:?}: {}", stderr(&out));
            files.push(fs::read(&path).unwrap());
        }
        assert!(!files[0].is_empty());
        assert_eq!(files[0], files[1], "{cmd:?}");
    }
}

#[test]
fn sweep_lambda_closed_rotation() {
    let out = qsl(&["sweep-lambda", "--points", "9", "--theta-max", "0.5pi", "--horizons", "0.5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "theta,gamma,omega,T,lambda_max");
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let expected = (v[2] * (2.0 * v[0]).sin().abs() * v[3]).min(1.0);
        assert!((v[4] - expected).abs() < 1e-8, "{line}");
    }
}

fn reachable_fractions(csv: &str) -> Vec<f64> {
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    let horizons = rows[0].len() - 5;
    (0..horizons)
        .map(|k| rows.iter().filter(|r| r[5 + k] == "1").count() as f64 / rows.len() as f64)
        .collect()
}

#[test]
fn gate_map_regions_grow_with_time() {
    let out = qsl(&["gate-map", "--points", "40"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("# horizons: 0.3,0.5,0.8\nmodel,theta,alpha,beta,t_star,reach_T1,reach_T2,reach_T3\n"));
    let f = reachable_fractions(&text);
    assert!(f[0] < f[1] && f[1] < f[2], "{f:?}");

    let out = qsl(&["gate-map", "--model", "qutrit", "--points", "20"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let first = text.lines().nth(2).unwrap();
    assert!(first.starts_with("qutrit,3.14159265,0,0,0,1,1,1"), "{first}");
}

#[test]
fn bell_sweep_ordering() {
    let out = qsl(&["bell-sweep"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let series = |state: &str| -> Vec<f64> {
        text.lines()
            .filter(|l| l.starts_with(&format!("{state},")))
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect()
    };
    let psi_plus = series("psi-plus");
    assert_eq!(psi_plus.len(), 200);
    for phi in ["phi-plus", "phi-minus"] {
        assert!(psi_plus.iter().zip(series(phi)).all(|(p, f)| *p >= f));
    }
    assert!(series("psi-minus").iter().all(|&l| l == 0.0));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# damped qubit\nmodel = qubit\ngamma = 1\ntheta = 0.25pi\nlambda = 1\n").unwrap();
    let out = qsl(&["bound", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let from_file = single_row(&stdout(&out));
    let out = qsl(&["bound", "--model", "qubit", "--gamma", "1", "--theta", "0.25pi", "--lambda", "1"]);
    assert_eq!(from_file, single_row(&stdout(&out)));

    let out = qsl(&["bound", "--config", cfg.to_str().unwrap(), "--gamma", "0"]);
    let row = single_row(&stdout(&out));
    assert_eq!(field(&row, "E"), "0");
    assert_eq!(field(&row, "A"), "2");

    fs::write(&cfg, "bogus = 1\n").unwrap();
    let out = qsl(&["bound", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = qsl(&["bound", "--config", "/nonexistent/qsl.cfg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_batch_passes() {
    let out = qsl(&["verify", "--trials", "5", "--dims", "2,3", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["master_seed"], 42);
    assert_eq!(v["records"].as_array().unwrap().len(), 10);
    assert!(stderr(&out).contains("0 violations"));
    let out = qsl(&["verify", "--dims", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
