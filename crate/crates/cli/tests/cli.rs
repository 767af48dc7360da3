//! End-to-end tests of the `minkres` binary: exit codes, schemas, values,
//! and byte stability.

use std::process::{Command, Output};

fn minkres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minkres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn minkres_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minkres"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn csv_cell(line: &str, idx: usize) -> f64 {
    line.split(',').nth(idx).unwrap().parse().unwrap()
}

#[test]
fn table1_default_reproduces_paper_values() {
    let out = minkres(&["table1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "M,p_R,E_extremal,E_cone");
    assert_eq!(lines.len(), 10);

    let reference = [
        (0.1, 0.025, 3.155, 3.173),
        (0.2, 0.067, 3.212, 3.272),
        (0.3, 0.126, 3.334, 3.452),
        (0.4, 0.204, 3.552, 3.740),
        (0.5, 0.304, 3.916, 4.188),
        (0.6, 0.423, 4.525, 4.908),
        (0.7, 0.558, 5.613, 6.159),
        (0.8, 0.702, 7.874, 8.726),
        (0.9, 0.850, 14.798, 16.534),
    ];
    for (line, (m, p, eu, ev)) in lines[1..].iter().zip(reference) {
        assert!((csv_cell(line, 0) - m).abs() < 1e-12);
        assert!((csv_cell(line, 1) - p).abs() <= 1e-3);
        assert!((csv_cell(line, 2) - eu).abs() <= 2e-3);
        assert!((csv_cell(line, 3) - ev).abs() <= 2e-3);
    }
}

#[test]
fn table1_single_row_and_json() {
    let out = minkres(&["table1", "--M-list", "0.5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!((csv_cell(row, 1) - 0.304027).abs() < 1e-5);
    assert!((csv_cell(row, 2) - 3.91605).abs() < 1e-4);
    assert!((csv_cell(row, 3) - 4.18879).abs() < 1e-4);

    let out = minkres(&["table1", "--M-list", "0.5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["p_R"].as_f64().unwrap() - 0.304027239610687).abs() < 1e-12);
    assert!(rows[0].get("M").is_some());
    assert!(rows[0].get("E_extremal").is_some());
    assert!(rows[0].get("E_cone").is_some());
}

#[test]
fn table1_rejects_out_of_range_height() {
    assert_eq!(code(&minkres(&["table1", "--M-list", "1.5"])), 2);
    assert_eq!(code(&minkres(&["table1", "--M-list", "0.5,0.5,-1"])), 2);
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(code(&minkres(&["table1", "--bogus", "1"])), 2);
    assert_eq!(code(&minkres(&["no-such-command"])), 2);
}

#[test]
fn resist_canonical_values() {
    let out = minkres(&["resist", "--profile", "cone", "--lambda", "0.5", "--R", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("method,value,abs_error_estimate\n"));
    let quad = text.lines().nth(1).unwrap();
    assert!(quad.starts_with("Quadrature1D,"));
    assert!((csv_cell(quad, 1) - 4.18879).abs() < 1e-4);
    let closed = text.lines().nth(2).unwrap();
    assert!(closed.starts_with("ClosedForm,"));
    assert!((csv_cell(closed, 1) - 4.18879).abs() < 1e-4);

    let out = minkres(&["resist", "--profile", "flat", "--R", "1"]);
    assert!(
        (csv_cell(stdout(&out).lines().nth(1).unwrap(), 1) - std::f64::consts::PI).abs() < 1e-4
    );

    let out = minkres(&["resist", "--profile", "cap", "--rho", "1", "--R", "1"]);
    assert!((csv_cell(stdout(&out).lines().nth(1).unwrap(), 1) - 4.712389).abs() < 1e-4);
}

#[test]
fn resist_extremal_has_closed_form_column() {
    let out = minkres(&["resist", "--profile", "extremal", "--M", "0.5", "--R", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let quad = csv_cell(text.lines().nth(1).unwrap(), 1);
    let closed = csv_cell(text.lines().nth(2).unwrap(), 1);
    assert!((quad - 3.91605).abs() < 1e-4);
    assert!((closed - 3.91605).abs() < 1e-4);
}

#[test]
fn resist_usage_errors() {
    // missing per-kind parameter
    assert_eq!(
        code(&minkres(&["resist", "--profile", "cone", "--R", "1"])),
        2
    );
    // unknown kind
    assert_eq!(
        code(&minkres(&["resist", "--profile", "torus", "--R", "1"])),
        2
    );
    // lightlike cone excluded
    assert_eq!(
        code(&minkres(&[
            "resist",
            "--profile",
            "cone",
            "--lambda",
            "1.0",
            "--R",
            "1"
        ])),
        2
    );
}

#[test]
fn extremal_values_and_dilation() {
    let out = minkres(&["extremal", "--R", "1", "--M", "0.9"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("p_R,c1,E\n"));
    let row = text.lines().nth(1).unwrap();
    assert!((csv_cell(row, 0) - 0.850205).abs() < 1e-5);
    assert!((csv_cell(row, 2) - 14.7983).abs() < 1e-3);

    // (R, M) = (2, 1): same p_R as (1, 0.5), energy scaled by 4
    let a = stdout(&minkres(&["extremal", "--R", "2", "--M", "1"]));
    let b = stdout(&minkres(&["extremal", "--R", "1", "--M", "0.5"]));
    let (ra, rb) = (a.lines().nth(1).unwrap(), b.lines().nth(1).unwrap());
    assert!((csv_cell(ra, 0) - csv_cell(rb, 0)).abs() < 1e-10);
    assert!((csv_cell(ra, 2) - 4.0 * csv_cell(rb, 2)).abs() < 2e-4);
}

#[test]
fn extremal_rejects_degenerate_boundary() {
    assert_eq!(code(&minkres(&["extremal", "--R", "1", "--M", "0"])), 2);
    assert_eq!(code(&minkres(&["extremal", "--R", "1", "--M", "1"])), 2);
    assert_eq!(code(&minkres(&["extremal", "--R", "-1", "--M", "0.5"])), 2);
}

#[test]
fn extremal_emits_curve_csv() {
    let dir = std::env::temp_dir().join("minkres-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.csv");
    let _ = std::fs::remove_file(&path);
    let out = minkres(&[
        "extremal",
        "--R",
        "1",
        "--M",
        "0.5",
        "--emit-curve",
        path.to_str().unwrap(),
        "--samples",
        "64",
    ]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "r,u,du,d2u");
    assert_eq!(lines.len(), 65);
    // r ascends to R, du descends to p_R, d2u stays nonpositive
    let first_r = csv_cell(lines[1], 0);
    let last = lines[64];
    assert!(first_r < 0.01);
    assert!((csv_cell(last, 0) - 1.0).abs() < 1e-4);
    assert!((csv_cell(last, 2) - 0.304027).abs() < 1e-4);
    for line in &lines[1..] {
        assert!(csv_cell(line, 3) <= 0.0);
    }
}

#[test]
fn check_suites_pass() {
    for suite in ["core", "ssc"] {
        let out = minkres(&["check", "--suite", suite]);
        assert_eq!(code(&out), 0, "suite {suite}: {}", stdout(&out));
        assert!(stdout(&out).contains("0 failed"));
    }
    assert_eq!(code(&minkres(&["check", "--suite", "bogus"])), 2);
}

#[test]
fn check_all_passes_and_fails_under_hook() {
    let out = minkres(&["check", "--suite", "all"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));

    // corrupted-tolerance hook forces the invariant-failure exit path
    let out = minkres_env(&["check", "--suite", "core"], "MINKRES_CORRUPT_TOL", "1");
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn check_json_schema() {
    let out = minkres(&["check", "--suite", "ssc", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["failed"], 0);
    assert!(json["checks"].as_array().unwrap().len() >= 3);
    for check in json["checks"].as_array().unwrap() {
        assert!(check["passed"].as_bool().unwrap());
    }
}

#[test]
fn diverge_grows_and_flags_annulus() {
    let out = minkres(&["diverge", "--R", "1", "--M", "0.5", "--n-max", "16"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,E_sloped,E_total,E_quadrature");
    assert_eq!(lines.len(), 17);
    let mut prev = 0.0;
    for line in &lines[1..] {
        let total = csv_cell(line, 2);
        assert!(total > prev);
        prev = total;
        // quadrature tracks the annulus-inclusive total
        assert!((csv_cell(line, 3) - total).abs() < 1e-6);
    }
    // the sloped/total discrepancy note goes to stderr
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("annulus"));

    // n = 1 is the plain cone through (R, M)
    let out = minkres(&["diverge", "--R", "1", "--M", "0.5", "--n-max", "1"]);
    let row = stdout(&out).lines().nth(1).unwrap().to_string();
    assert!((csv_cell(&row, 2) - 4.18879).abs() < 1e-4);
}

#[test]
fn diverge_steep_heights_grow_fast() {
    let out = minkres(&["diverge", "--R", "1", "--M", "0.99", "--n-max", "8"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let first = csv_cell(text.lines().nth(1).unwrap(), 2);
    let last = csv_cell(text.lines().nth(8).unwrap(), 2);
    // E_total(8)/E_total(1) = 7.758 at M = 0.99
    assert!(last / first > 7.0, "ratio {}", last / first);
}

#[test]
fn ssc_sweep_satisfied() {
    let out = minkres(&[
        "ssc",
        "--profile",
        "cone",
        "--lambda",
        "0.9",
        "--R",
        "1",
        "--points",
        "50",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("points,t_values,worst_margin,satisfied\n"));
    assert!(text.lines().nth(1).unwrap().ends_with("true"));

    let out = minkres(&[
        "ssc",
        "--profile",
        "extremal",
        "--M",
        "0.5",
        "--R",
        "1",
        "--points",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["satisfied"], true);
    assert!(json["worst_margin"].as_f64().unwrap() >= -1e-12);
}

#[test]
fn ssc_probe_table_via_output() {
    let dir = std::env::temp_dir().join("minkres-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("probes.csv");
    let _ = std::fs::remove_file(&path);
    let out = minkres(&[
        "ssc",
        "--profile",
        "cap",
        "--rho",
        "1",
        "--R",
        "1",
        "--points",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("x,y,t,margin\n"));
    assert_eq!(csv.lines().count(), 1 + 5 * 64);
}

#[test]
fn output_flag_writes_payload() {
    let dir = std::env::temp_dir().join("minkres-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t1.csv");
    let _ = std::fs::remove_file(&path);
    let out = minkres(&[
        "table1",
        "--M-list",
        "0.5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("M,p_R,E_extremal,E_cone\n"));
}

#[test]
fn byte_stable_output() {
    let a = minkres(&["table1"]);
    let b = minkres(&["table1"]);
    assert_eq!(a.stdout, b.stdout);

    let a = minkres(&[
        "ssc",
        "--profile",
        "cone",
        "--lambda",
        "0.5",
        "--points",
        "10",
        "--seed",
        "7",
    ]);
    let b = minkres(&[
        "ssc",
        "--profile",
        "cone",
        "--lambda",
        "0.5",
        "--points",
        "10",
        "--seed",
        "7",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn precision_flag_controls_significant_digits() {
    let out = minkres(&["table1", "--M-list", "0.5", "--precision", "3"]);
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    // 3 significant digits: 0.304, 3.92, 4.19
    assert_eq!(row, "0.500,0.304,3.92,4.19");

    let out = minkres(&["table1", "--M-list", "0.5", "--precision", "9"]);
    let row2 = stdout(&out).lines().nth(1).unwrap().to_string();
    assert!(row2.split(',').nth(1).unwrap().len() > 8);
}

#[test]
fn tolerance_flag_validated() {
    assert_eq!(code(&minkres(&["table1", "--tol", "-1"])), 2);
    assert_eq!(
        code(&minkres(&[
            "resist",
            "--profile",
            "flat",
            "--R",
            "1",
            "--tol",
            "0"
        ])),
        2
    );
}

#[test]
fn profile_descriptor_in_json_resist() {
    let out = minkres(&[
        "resist",
        "--profile",
        "cone",
        "--lambda",
        "0.5",
        "--R",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["profile"]["kind"], "cone");
    assert_eq!(json["profile"]["R"], 2.0);
    assert!((json["profile"]["parameters"]["lambda"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert_eq!(json["quadrature"]["method"], "Quadrature1D");
    assert!(json["quadrature"]["abs_error_estimate"].as_f64().unwrap() >= 0.0);
    assert_eq!(json["closed_form"]["method"], "ClosedForm");
}
