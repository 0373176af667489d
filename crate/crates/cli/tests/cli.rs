//! End-to-end runs of the `quatstat` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use quatstat_core::thermo::thermo_spectral;
use quatstat_core::SpectralEnsemble;
use tempfile::TempDir;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatstat"))
        .args(args)
        .current_dir(dir)
        .env_remove("QUATSTAT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parsed CSV body (header dropped).
fn table(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn col(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn spin_sweep_has_one_row_per_beta() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &["thermo", "--model", "spin", "--omega", "2", "--v", "0.5", "--x", "1", "--beta", "0.1:5:50"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("beta,Z1,A,S,U,Cv\n"));
    let rows = table(&o);
    assert_eq!(rows.len(), 50);
    let betas = col(&rows, 0);
    assert_eq!(betas[0], 0.1);
    assert_eq!(betas[49], 5.0);
    assert!(dir.path().join("discrepancies.json").exists());
}

#[test]
fn uncoupled_toy_matches_two_level_table() {
    let dir = TempDir::new().unwrap();
    fs::write(
        dir.path().join("toy.json"),
        r#"{"toy": {"a": [0, 0.7, 0, 0], "b": [0, -0.4, 0, 0], "c": [0, 0, 0, 0], "alpha": 2.0, "gamma": 1.0},
            "particles": 3}"#,
    )
    .unwrap();
    let o = run_in(dir.path(), &["thermo", "--model", "toy", "--params", "toy.json", "--beta", "0.2:3:12"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let e = SpectralEnsemble::from_energies(&[0.7, -0.4], 3, 1.0).unwrap();
    for row in table(&o) {
        let v: Vec<f64> = row.iter().map(|s| s.parse().unwrap()).collect();
        let want = thermo_spectral(&e, v[0]).unwrap();
        let got = [v[1], v[2], v[3], v[4], v[5]];
        let exp = [want.z1, want.free_energy, want.entropy, want.internal_energy, want.heat_capacity];
        for (g, w) in got.iter().zip(exp) {
            assert!((g - w).abs() <= 1e-12 * w.abs().max(1.0), "beta {}: {g} vs {w}", v[0]);
        }
    }
    // without coupling only the heat-capacity display still disagrees
    let log: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.path().join("discrepancies.json")).unwrap()).unwrap();
    assert!(!log.is_empty());
    assert!(log.iter().all(|d| d["quantity"] == "closed_form.heat_capacity"));
}

#[test]
fn qubit_partition_function() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), &["thermo", "--model", "qubit", "--phi", "0.7", "--beta", "0.1:4:20"]);
    assert!(o.status.success());
    let rows = table(&o);
    for (beta, z) in col(&rows, 0).into_iter().zip(col(&rows, 1)) {
        assert!((z - (1.0 + (-2.0 * beta).exp())).abs() < 1e-12);
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = TempDir::new().unwrap();
    let base = ["compare", "--model", "spin", "--v", "0.3", "--beta", "0.05:4:40", "--log"];
    let one = run_in(dir.path(), &[&base[..], &["--parallel", "1"]].concat());
    let four = run_in(dir.path(), &[&base[..], &["--parallel", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stderr, four.stderr);

    let t1 = run_in(dir.path(), &["thermo", "--output", "json", "--parallel", "1"]);
    let t4 = run_in(dir.path(), &["thermo", "--output", "json", "--parallel", "4"]);
    assert_eq!(t1.stdout, t4.stdout);
}

#[test]
fn out_flag_writes_the_table() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), &["thermo", "--beta", "1:2:3", "--out", "table.csv"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(dir.path().join("table.csv")).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn configuration_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.json"), "{not json").unwrap();
    for args in [
        &["validate", "--model", "file", "--params", "bad.json"][..],
        &["thermo", "--model", "file", "--params", "missing.json"],
        &["thermo", "--beta", "0:1:5"],
        &["thermo", "--model", "toy"],
        &["thermo", "--model", "spin", "--omega", "-1"],
    ] {
        let o = run_in(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    fs::write(
        dir.path().join("mismatch.json"),
        r#"{"matrix": {"n": 2, "entries": [[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[0,1,0,0]]]}, "metric_diag": [1, 2, 3]}"#,
    )
    .unwrap();
    let o = run_in(dir.path(), &["validate", "--model", "file", "--params", "mismatch.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unphysical_partition_function_exits_3() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("slice.json"), r#"{"slice": {"a_e": 0.0, "b_e": 0.0, "kappa": -0.5}}"#).unwrap();
    let o = run_in(dir.path(), &["thermo", "--model", "toy", "--params", "slice.json", "--beta", "1:10:10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run_in(
        dir.path(),
        &["thermo", "--model", "toy", "--params", "slice.json", "--path", "spectral", "--beta", "1:2:2"],
    );
    assert_eq!(o.status.code(), Some(3));
}

fn verdicts(o: &Output) -> Vec<(String, String)> {
    stdout(o)
        .lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn verdict(o: &Output, key: &str) -> String {
    verdicts(o).into_iter().find(|(k, _)| k == key).unwrap().1
}

#[test]
fn validate_verdicts() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("spin.json"), r#"{"spin": {"omega": 2.0, "v": 0.5, "x": 1.3}}"#).unwrap();
    let o = run_in(dir.path(), &["validate", "--model", "file", "--params", "spin.json"]);
    assert!(o.status.success());
    assert_eq!(verdict(&o, "quasi-anti-Hermitian"), "yes");

    fs::write(
        dir.path().join("identity.json"),
        r#"{"matrix": {"n": 2, "entries": [[[1,0,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,0,0]]]}}"#,
    )
    .unwrap();
    let o = run_in(dir.path(), &["validate", "--model", "file", "--params", "identity.json"]);
    assert!(o.status.success());
    assert_eq!(verdict(&o, "quasi-anti-Hermitian"), "no");
    assert_eq!(verdict(&o, "pseudo-anti-Hermitian"), "no");
    assert_eq!(verdict(&o, "pseudo-Hermitian"), "yes");

    // d = −(α/γ) c̄ = −3 for c = 1, α/γ = 3; replaced by +0.5
    fs::write(
        dir.path().join("corrupt.json"),
        r#"{"matrix": {"n": 2, "entries": [[[0,0.8,0,0],[1,0,0,0]],[[0.5,0,0,0],[0,-0.3,0,0]]]},
            "metric_diag": [1.5, 0.5]}"#,
    )
    .unwrap();
    let o = run_in(dir.path(), &["validate", "--model", "file", "--params", "corrupt.json"]);
    assert!(o.status.success());
    assert_eq!(verdict(&o, "quasi-anti-Hermitian"), "no");
    let residual: f64 = verdict(&o, "anti-Hermitian residual").parse().unwrap();
    assert!(residual > 0.1);

    let o = run_in(dir.path(), &["validate", "--model", "file", "--params", "corrupt.json", "--output", "json"]);
    let c: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(c["quasi_anti_hermitian"], false);
}

#[test]
fn compare_uncoupled_columns_agree() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("slice.json"), r#"{"slice": {"a_e": 0.6, "b_e": -0.2, "kappa": 0.0}}"#).unwrap();
    let o = run_in(dir.path(), &["compare", "--model", "toy", "--params", "slice.json", "--beta", "0.1:3:10"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for row in table(&o) {
        let v: Vec<f64> = row[1..].iter().map(|s| s.parse().unwrap()).collect();
        for z in &v[1..] {
            assert!((z - v[0]).abs() < 1e-10);
        }
    }
}

#[test]
fn compare_qubit_leaves_slice_columns_empty() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), &["compare", "--model", "qubit", "--beta", "0.5:1:2"]);
    assert!(o.status.success());
    for row in table(&o) {
        assert_eq!(row.len(), 6);
        assert!(row[3].is_empty() && row[4].is_empty());
    }
    let log = fs::read_to_string(dir.path().join("discrepancies.json")).unwrap();
    assert_eq!(serde_json::from_str::<Vec<serde_json::Value>>(&log).unwrap().len(), 0);
}

#[test]
fn negtemp_marks_the_midpoint() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), &["negtemp", "--model", "spin", "--particles", "10", "--points", "11"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("E,S_stirling,S_exact,T\n"));
    let rows = table(&o);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[5][3], "infinite");
    let t: Vec<f64> = rows.iter().filter(|r| r[3] != "infinite").map(|r| r[3].parse().unwrap()).collect();
    assert!(t[1..5].iter().all(|&x| x > 0.0));
    assert!(t[5..9].iter().all(|&x| x < 0.0));

    let o = run_in(dir.path(), &["negtemp", "--e-plus", "1", "--e-minus", "-1", "--particles", "4", "--points", "5"]);
    let e = col(&table(&o), 0);
    assert_eq!(e, vec![-4.0, -2.0, 0.0, 2.0, 4.0]);
}

#[test]
fn spectrum_of_spin_model() {
    let dir = TempDir::new().unwrap();
    let o = run_in(dir.path(), &["spectrum", "--model", "spin", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut e: Vec<f64> = v["energies"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    e.sort_by(f64::total_cmp);
    assert!((e[0] - 0.5).abs() < 1e-10 && (e[1] - 1.5).abs() < 1e-10);

    let o = run_in(dir.path(), &["spectrum", "--model", "spin"]);
    let rows = table(&o);
    let mut im = col(&rows, 1);
    im.sort_by(f64::total_cmp);
    assert!((im[0] - 0.5).abs() < 1e-10 && (im[1] - 1.5).abs() < 1e-10);
}

#[test]
fn tolerance_env_var_filters_the_log() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_quatstat"))
        .args(["thermo", "--beta", "1:2:2"])
        .current_dir(dir.path())
        .env("QUATSTAT_TOL", "1e6")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(!dir.path().join("discrepancies.json").exists());
}
