use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zerocross(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerocross"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .env_remove("ZEROCROSS_JOBS")
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) {
    let out = zerocross(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

/// `(header, rows)` of a CSV artifact.
fn read_csv(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    lines.next().unwrap();
    let rows = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn column(rows: &[Vec<f64>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i]).collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn sweep_phase_power_two() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["sweep-phase", "--profile", "power:n=2", "--G", "1000", "--T", "1", "--K", "360"]);
    let (header, rows) = read_csv(&dir.path().join("sweep-phase_power-n2_G1000_T1.csv"));
    let parts: Vec<&str> = header.split(' ').collect();
    assert_eq!(parts[..4], ["#", "zerocross", env!("CARGO_PKG_VERSION"), "sweep-phase"]);
    assert_eq!(parts[4].len(), 64);
    assert_eq!(rows.len(), 360);
    assert!((mean(&column(&rows, 1)) / 3.0 - 1.0).abs() < 0.02);
}

#[test]
fn sweep_phase_at_start_is_unity() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["sweep-phase", "--profile", "tanh:n=2,a=5", "--G", "50", "--T", "-1", "--K", "24"]);
    let (_, rows) = read_csv(&dir.path().join("sweep-phase_tanh-n2-a5_G50_T-1.csv"));
    assert!(rows.iter().all(|r| (r[1] - 1.0).abs() < 1e-14));
}

#[test]
fn sin2_double_crossing_is_sensitive_to_g() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["sweep-phase", "--profile", "sin2", "--G", "998,1000,1002", "--T", "3", "--K", "32"]);
    let means: Vec<f64> = ["998", "1000", "1002"]
        .iter()
        .map(|g| mean(&column(&read_csv(&dir.path().join(format!("sweep-phase_sin2_G{g}_T3.csv"))).1, 1)))
        .collect();
    let lo = means.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = means.iter().cloned().fold(0.0, f64::max);
    assert!(hi - lo > 0.5 * lo, "{means:?}");
}

#[test]
fn outputs_are_byte_identical_across_runs_and_workers() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["sweep-phase", "--profile", "power:n=1", "--G", "200", "--T", "0.5", "--K", "16"];
    ok(a.path(), &args);
    let out = Command::new(env!("CARGO_BIN_EXE_zerocross"))
        .args(args)
        .args(["--jobs", "1", "--out"])
        .arg(b.path())
        .env("ZEROCROSS_JOBS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let name = "sweep-phase_power-n1_G200_T0.5.csv";
    assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap());
}

#[test]
fn equivalent_configs_share_a_hash() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    ok(a.path(), &["rho-g", "--nu", "0.25", "--g", "1,10,100"]);
    ok(b.path(), &["rho-g", "--nu", "0.25", "--g", "1:100:log,3"]);
    let name = "rho-g_nu0.25.csv";
    assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap());
}

#[test]
fn mean_vs_n_tracks_beta() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["mean-vs-n", "--n", "1,2", "--K", "16"]);
    ok(dir.path(), &["mean-vs-n", "--n", "1,2", "--K", "16", "--family", "tanh"]);
    let (_, power) = read_csv(&dir.path().join("mean-vs-n_power_G1000.csv"));
    let (_, tanh) = read_csv(&dir.path().join("mean-vs-n_tanh-a5_G1000.csv"));
    assert!((power[0][2] - 5.0 / 3.0).abs() < 1e-12 && (power[1][2] - 3.0).abs() < 1e-12);
    for (p, t) in power.iter().zip(&tanh) {
        assert!((p[1] / p[2] - 1.0).abs() < 0.02);
        assert!((p[1] / t[1] - 1.0).abs() < 0.01);
    }
}

#[test]
fn rho_g_approaches_beta() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["rho-g", "--nu", "0.25", "--g", "1:1000:log"]);
    let (_, rows) = read_csv(&dir.path().join("rho-g_nu0.25.csv"));
    assert_eq!(rows.len(), 31);
    let at100 = rows.iter().find(|r| r[0] == 100.0).expect("decade point on the grid");
    assert!((at100[1] / 3.0 - 1.0).abs() < 0.01);
    let tail: Vec<f64> = rows.iter().filter(|r| r[0] >= 100.0).map(|r| (r[1] / 3.0 - 1.0).abs()).collect();
    assert!(tail.iter().all(|&d| d < 0.01));
}

#[test]
fn energy_curve_starts_at_one() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["energy-curve", "--nu", "0.25", "--g", "0.5,5", "--format", "json"]);
    for g in ["0.5", "5"] {
        let doc = read_json(&dir.path().join(format!("energy-curve_nu0.25_g{g}.json")));
        assert_eq!(doc["columns"], serde_json::json!(["T", "R"]));
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 201);
        assert!((rows[0][1].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!(doc["header"].as_str().unwrap().starts_with("# zerocross "));
    }
}

#[test]
fn fock_dist_half_the_mass_beyond_three_n() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["fock-dist", "--N", "9", "--u-minus", "1"]);
    let (_, rows) = read_csv(&dir.path().join("fock-dist_N9_u1.csv"));
    assert!(rows.iter().all(|r| r[0] as u64 % 2 == 1));
    let s = read_json(&dir.path().join("fock-dist_N9_u1_summary.json"));
    assert!((s["mass_at_least_3N"].as_f64().unwrap() - 0.5).abs() < 0.01);
    // beta = 3, <M> + 1/2 = 3 (N + 1/2); Mandel Q = (3 + N + 4N^2)/(3N + 1).
    assert!((s["mean"].as_f64().unwrap() - 28.5).abs() < 1e-6);
    assert!((s["mandel_q"].as_f64().unwrap() - 12.0).abs() < 1e-9);
    assert!(s["variance_routes"]["max_relative_gap"].as_f64().unwrap() < 1e-7);
}

#[test]
fn fock_dist_vacuum_without_crossing() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["fock-dist", "--N", "0", "--u-minus", "0"]);
    let s = read_json(&dir.path().join("fock-dist_N0_u0_summary.json"));
    assert!(s["mandel_q"].is_null());
    assert_eq!(s["total"].as_f64().unwrap(), 1.0);
}

#[test]
fn double_cross_scan_extremes() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["double-cross", "--n", "2", "--phi-scan", "10000"]);
    let (_, rows) = read_csv(&dir.path().join("double-cross_n2.csv"));
    assert_eq!(rows.len(), 10_000);
    let betas = column(&rows, 1);
    let lo = betas.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = betas.iter().cloned().fold(0.0, f64::max);
    assert!((lo - 1.0).abs() < 1e-9 && (hi - 17.0).abs() < 1e-9, "{lo} {hi}");
}

#[test]
fn double_cross_plan() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    let up = 2f64.sqrt();
    std::fs::write(
        &plan,
        format!(r#"{{"crossings":[{{"u_plus":[{up},0],"u_minus":[0,1]}},{{"u_plus":[{up},0],"u_minus":[0,1],"phi_before":0}}]}}"#),
    )
    .unwrap();
    ok(dir.path(), &["double-cross", "--plan", plan.to_str().unwrap()]);
    let doc = read_json(&dir.path().join("double-cross_plan.json"));
    assert!((doc["beta"].as_f64().unwrap() - 17.0).abs() < 1e-12);
    assert!(doc["constraint_residual"].as_f64().unwrap() < 1e-10);

    std::fs::write(&plan, r#"{"crossings":[{"u_plus":[1,0],"u_minus":[1,0]}]}"#).unwrap();
    assert_eq!(zerocross(dir.path(), &["double-cross", "--plan", plan.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn bad_configuration_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 6] = [
        &["sweep-phase", "--profile", "power:n=2,b=1", "--G", "1", "--T", "1"],
        &["sweep-phase", "--profile", "power:n=2", "--G", "1", "--T", "1", "--K", "4"],
        &["sweep-phase", "--profile", "power:n=2", "--G", "1:2:cube", "--T", "1"],
        &["mean-vs-n", "--n", "11"],
        &["fock-dist", "--N", "1.5", "--u-minus", "1"],
        &["sweep-phase", "--profile", "power:n=2", "--G", "1", "--T", "1", "--rel-tol", "1e-3"],
    ];
    for args in cases {
        assert_eq!(zerocross(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn bad_worker_count_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_zerocross"))
        .args(["rho-g", "--nu", "0.25", "--g", "1", "--out"])
        .arg(dir.path())
        .env("ZEROCROSS_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_three_and_removes_partial_files() {
    let dir = tempfile::tempdir().unwrap();
    // G = 1 fits in the step budget and is written first; G = 1000 does not.
    let base = ["sweep-phase", "--profile", "power:n=2", "--T", "1", "--K", "8", "--max-steps", "3000"];
    ok(dir.path(), &[&base[..], &["--G", "1"]].concat());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    std::fs::remove_file(dir.path().join("sweep-phase_power-n2_G1_T1.csv")).unwrap();
    let out = zerocross(dir.path(), &[&base[..], &["--G", "1,1000"]].concat());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

fn verify(extra: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_zerocross")).arg("verify").args(extra).output().unwrap();
    (out.status.code(), serde_json::from_slice(&out.stdout).expect("report on stdout"))
}

fn status_of<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["status"].as_str().unwrap()
}

#[test]
fn verify_passes_on_a_clean_build() {
    let (code, report) = verify(&[]);
    assert_eq!(code, Some(0), "{report:#}");
    assert_eq!(report["status"], "pass");
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn verify_catches_a_bad_bessel_switchover() {
    let (code, report) = verify(&["--bessel-switchover", "3"]);
    assert_eq!(code, Some(1));
    assert_eq!(status_of(&report, "bessel_cross_product"), "fail");
    assert_eq!(status_of(&report, "gamma_reflection"), "pass");
}

#[test]
fn verify_loose_tolerance_warns_on_wronskian() {
    let (_, report) = verify(&["--rel-tol", "1e-6"]);
    assert_eq!(status_of(&report, "wronskian"), "warn");
    let (code, report) = verify(&["--rel-tol", "1e-7"]);
    assert_eq!(status_of(&report, "wronskian"), "warn");
    assert_eq!((code, &report["status"]), (Some(0), &Value::from("warn")));
}

#[test]
fn specfun_check_dumps_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("identities.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_zerocross"))
        .args(["specfun-check", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# zerocross "));
    assert_eq!(lines.next().unwrap(), "identity,parameter,x,residual,limit");
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (r, limit): (f64, f64) = (f[3].parse().unwrap(), f[4].parse().unwrap());
        assert!(r <= limit, "{line}");
    }
}

#[test]
fn help_documents_ranges() {
    let out = Command::new(env!("CARGO_BIN_EXE_zerocross")).args(["sweep-phase", "--help"]).output().unwrap();
    let help = String::from_utf8(out.stdout).unwrap();
    assert!(help.contains("a:b:log[,count]") && help.contains("ZEROCROSS_JOBS"));
}
