//! End-to-end runs of the `spinrot` binary.

use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;
use spinrot::densities::{spin_current_3d_eq, spin_density_3d};
use spinrot::{ParamSet, Vec3};

fn spinrot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinrot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_rows(o: &Output) -> Vec<Value> {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn num(v: &Value, k: &str) -> f64 {
    v[k].as_f64().unwrap_or_else(|| panic!("column {k} in {v}"))
}

#[test]
fn quoted_filling_gives_quoted_conductivity() {
    let dir = tempfile::tempdir().unwrap();
    let mu_over_m = 1.0 / (1.0 - 0.067);
    let cfg = config(dir.path(), &format!("mu_over_m = {mu_over_m:.17}\n[params]\nb_field = [0, 0, 0.1]\n"));
    let rows = json_rows(&spinrot(&["conductivity2d", "--config", &cfg, "--format", "json"]));
    assert_eq!(rows.len(), 1);
    assert!((num(&rows[0], "sigma_sh_q4pi") + 0.067).abs() < 1e-12);
    assert_eq!(rows[0]["units"]["sigma_sh"], "q");
}

#[test]
fn log_sweep_approaches_massless_value() {
    let o = spinrot(&["sweep", "--parameter", "mu_over_m", "--min", "1", "--max", "1000", "--steps", "13", "--scale", "log", "--format", "json"]);
    let s: Vec<f64> = json_rows(&o).iter().map(|r| num(r, "sigma_sh_q4pi")).collect();
    assert_eq!(s.len(), 13);
    assert_eq!(s[0], 0.0);
    assert!(s.windows(2).all(|w| w[1] < w[0]), "{s:?}");
    assert!((s[12] + 1.0).abs() <= 1e-3 * (1.0 + 1e-9));
}

#[test]
fn band_edge_row_is_zero() {
    let rows = json_rows(&spinrot(&["sweep", "--parameter", "mu", "--min", "1", "--max", "1", "--steps", "1", "--format", "json"]));
    let r = &rows[0];
    for k in ["sigma_sh", "sigma_sh1", "a1", "a2", "n_spin", "j_eq_x", "j_eq_y", "j_neq_x", "j_neq_y", "consistency"] {
        assert_eq!(num(r, k), 0.0, "{k}");
    }
}

#[test]
fn bulk_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "[params]\nmu = 2.5\n");
    let r = &json_rows(&spinrot(&["densities3d", "--config", &cfg, "--format", "json"]))[0];
    for k in ["n_spin", "j_eq_x", "j_eq_y", "j_eq_z", "j_neq_x", "j_neq_y", "j_neq_z"] {
        assert_eq!(num(r, k), 0.0, "{k}");
    }

    let cfg = config(dir.path(), "axis = [1, 0, 0]\n[params]\nmu = 2.5\nb_field = [0, 0, 0.4]\nomega = [0, 0, 0.1]\n");
    let r = &json_rows(&spinrot(&["densities3d", "--config", &cfg, "--format", "json"]))[0];
    assert_eq!(num(r, "n_spin"), 0.0);
}

#[test]
fn bulk_row_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let body = "axis = [0.6, 0, 0.8]\n[params]\nm = 0.9\nq = -1.1\nhbar = 0.7\nmu = 2.3\ntau = 1.4\n\
                b_field = [0.1, -0.2, 0.3]\nomega = [0.05, -0.1, 0.15]\ne_field = [0.2, 0.1, -0.3]\nx = [0.3, 0.2, 0.1]\n";
    let cfg = config(dir.path(), body);
    let r = &json_rows(&spinrot(&["densities3d", "--config", &cfg, "--format", "json"]))[0];
    let p = ParamSet {
        m: 0.9,
        q: -1.1,
        hbar: 0.7,
        mu: 2.3,
        tau: 1.4,
        b_field: Vec3::new(0.1, -0.2, 0.3),
        omega: Vec3::new(0.05, -0.1, 0.15),
        e_field: Vec3::new(0.2, 0.1, -0.3),
        x: Vec3::new(0.3, 0.2, 0.1),
        ..ParamSet::default()
    };
    let a = Vec3::new(0.6, 0.0, 0.8);
    assert_eq!(num(r, "n_spin"), spin_density_3d(&p, &a).unwrap());
    assert_eq!(num(r, "j_eq_y"), spin_current_3d_eq(&p, &a).unwrap().y);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["sweep", "--parameter", "tau", "--min", "0.1", "--max", "5", "--steps", "17"];
    let one = spinrot(&[&args[..], &["--jobs", "1"]].concat());
    let four = spinrot(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let csv = stdout(&one);
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("m [E],q [q],hbar [E L],mu [E]"));
    assert_eq!(csv.lines().count(), 18);
    // 17 significant digits
    assert!(csv.lines().nth(1).unwrap().starts_with("1.0000000000000000e0,"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = spinrot(&["conductivity2d", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("sigma_sh_q4pi [q/4pi]"));
}

#[test]
fn outputs_select_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "outputs = [\"mu\", \"sigma_sh\"]\n");
    let o = spinrot(&["conductivity2d", "--config", &cfg]);
    assert_eq!(stdout(&o).lines().next(), Some("mu [E],sigma_sh [q]"));
    let cfg = config(dir.path(), "outputs = [\"nonsense\"]\n");
    assert_eq!(spinrot(&["conductivity2d", "--config", &cfg]).status.code(), Some(1));
}

#[test]
fn si_run() {
    let dir = tempfile::tempdir().unwrap();
    let body = "[si]\nmass_kg = 9.1093837015e-31\ncharge_c = 1.602176634e-19\ntau_s = 1e-14\ntemperature_k = 0\n\
                b_tesla = [0, 0, 1]\nomega_rad_s = [0, 0, 1000]\ne_volt_per_m = [0, 0, 0]\nx_m = [0.01, 0, 0]\nradius_m = 0.01\n\
                [si.filling]\nmu_over_m = 1.0718113612004287\n";
    let cfg = config(dir.path(), body);
    let o = spinrot(&["conductivity2d", "--config", &cfg, "--si-units", "--format", "json"]);
    let r = &json_rows(&o)[0];
    assert!((num(r, "sigma_sh_q4pi") + 0.067).abs() < 1e-9);
    assert_eq!(r["units"]["j_eq_si_y"], "A/m");
    // without an [si] table the flag is a usage error
    assert_eq!(spinrot(&["conductivity2d", "--si-units"]).status.code(), Some(1));
}

#[test]
fn bad_sweep_field_is_usage_error() {
    let o = spinrot(&["sweep", "--parameter", "colour", "--min", "0", "--max", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu_over_m"));
}

#[test]
fn quick_validation_passes_in_ten_seconds() {
    let t = Instant::now();
    let o = spinrot(&["validate"]);
    assert!(t.elapsed().as_secs_f64() < 10.0);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn repro_report_rows() {
    let rows = json_rows(&spinrot(&["repro-paper", "--format", "json"]));
    let get = |id: &str| rows.iter().find(|r| r["id"] == id).unwrap().clone();
    assert_eq!(get("sigma_sh")["agrees"], true);
    assert_eq!(get("sigma_sh1")["agrees"], true);
    assert_eq!(get("sigma_total")["agrees"], true);
    assert_eq!(get("direct_si_kf_sigma_sh")["agrees"], false);
    assert!(get("sigma_sh_massless_limit")["quoted"].is_null());
    let ratio = get("centrifugal_to_omega_b_r");
    assert!(num(&ratio, "computed") < 1e-3);
    assert!((num(&get("sigma_sh"), "computed") - 0.067).abs() < 1e-12);
}
