use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2geo"))
        .args(args)
        .env_remove("SU2GEO_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_examples() {
    let out = run(&["classify", "1", "1", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("round-sphere"));

    let out = run(&["classify", "2", "3", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "berger-homothety");
    assert_eq!(v["eps"], "2/3");
    assert_eq!(v["canonical"][0], "3");

    let out = run(&["classify", "1", "2", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("non-naturally-reductive"));
}

#[test]
fn classify_rejects_bad_input() {
    let out = run(&["classify", "1", "0", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["classify", "1", "abc", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let out = run(&["geodesic", "--help"]);
    assert!(out.status.success());
}

#[test]
fn geodesic_report_and_trajectory_schema() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let out = run(&[
        "geodesic",
        "--eps",
        "0.5",
        "--theta",
        "1.0471975511965976",
        "--step",
        "0.001",
        "--t-end",
        "3.0",
        "--samples",
        "20",
        "--hopf",
        "--out",
        traj.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mode"], "closed-form");
    assert!(v["max_closed_vs_integrated"].as_f64().unwrap() < 1e-8);
    assert!(v["period_shift_residual_closed"].as_f64().unwrap() < 1e-10);

    let csv = std::fs::read_to_string(&traj).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,qw,qx,qy,qz,a1,a2,a3,hopf_x,hopf_y,hopf_z"
    );
    assert_eq!(lines.count(), 20);
}

#[test]
fn geodesic_orthogonal_start_has_zero_shift() {
    let out = run(&[
        "geodesic",
        "--eps",
        "0.5",
        "--theta",
        "1.5707963267948966",
        "--step",
        "0.001",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["shift"].as_f64().unwrap().abs() < 1e-12);
    // Closed geodesic: period 2π√ε.
    let period = v["period"].as_f64().unwrap();
    assert!((period - 2.0 * std::f64::consts::PI * 0.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn geodesic_zero_horizon_is_a_single_row() {
    let out = run(&[
        "geodesic", "--eps", "0.5", "--theta", "1.0", "--t-end", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["trajectory_rows"], 1);
    assert_eq!(v["max_closed_vs_integrated"].as_f64().unwrap(), 0.0);
}

#[test]
fn geodesic_rejects_eps_one_and_bad_theta() {
    let out = run(&["geodesic", "--eps", "1.0", "--theta", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["geodesic", "--eps", "0.5", "--theta", "4.0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn foliation_build_reports_the_witness() {
    let out = run(&["foliation", "build", "3", "2", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["v2"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((v["v3"].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["totally_geodesic_residuals"][0], "0");
    assert!((v["d_omega_23"].as_f64().unwrap() + 8.0).abs() < 1e-9);
    assert_eq!(v["is_metric"], true);
    assert_eq!(v["homogeneous"], false);

    let out = run(&["foliation", "build", "1", "2", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn foliation_certify_named_fields() {
    let out = run(&[
        "foliation", "certify", "--field", "y3", "--eps", "0.5", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["certificate"]["Homogeneous"]["max_killing_residual"]
        .as_f64()
        .unwrap()
        .abs()
        < 1e-10);

    let out = run(&[
        "foliation", "certify", "--field", "theorem1", "3", "2", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let witness = &v["certificate"]["NotClosed"];
    assert_eq!(witness["pair"][0], 1);
    assert_eq!(witness["pair"][1], 2);
    assert!((witness["value"].as_f64().unwrap() + 8.0).abs() < 1e-9);
}

#[test]
fn foliation_check_killing_field_is_metric() {
    let out = run(&[
        "foliation",
        "check",
        "--field",
        "killing:0.5,-0.7,0.3,0.2",
        "--eps",
        "2.0",
        "--samples",
        "6",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["check"]["is_metric"], true);
    assert!(v["check"]["max_residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["check"]["samples"].as_array().unwrap().len(), 6);

    // Missing --eps is a usage error.
    let out = run(&["foliation", "check", "--field", "y3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_is_deterministic_and_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sweep",
            "--eps-count",
            "4",
            "--theta-count",
            "3",
            "--times",
            "25",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "seeded runs must be byte-identical");

    let text = String::from_utf8(bytes_a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "eps,theta,period,shift,max_residual");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        let residual: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual < 1e-10);
    }

    // An empty grid is a usage error.
    let out = run(&["sweep", "--eps-count", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_dir_env_var_resolves_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_su2geo"))
        .args(["classify", "1", "1", "1", "--format", "json", "--out", "report.json"])
        .env("SU2GEO_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Path::new(&dir.path().join("report.json")).exists());
}
