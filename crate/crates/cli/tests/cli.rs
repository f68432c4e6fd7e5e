use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lapgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapgeo")).args(args).env_remove("LAPGEO_WORKERS").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {} stderr {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| v.to_string().parse().unwrap())
}

fn gen(dir: &TempDir, name: &str, params: &str, grid: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.csv"));
    let mut args = vec!["generate", name, "--out", path.to_str().unwrap()];
    if !params.is_empty() {
        args.extend(["--param", params]);
    }
    if !grid.is_empty() {
        args.extend(["--grid", grid]);
    }
    let out = lapgeo(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn generate_writes_grid_csv() {
    let dir = TempDir::new().unwrap();
    let c = gen(&dir, "circle", "r=1", "256");
    let text = std::fs::read_to_string(&c).unwrap();
    assert_eq!(text.lines().count(), 257);
    let g = gen(&dir, "gamma_eps", "eps=6", "1024");
    let h = header(&g);
    assert!(h.contains("n=1 m=3") && h.contains("periodic=1"), "{h}");
    let cone = gen(&dir, "cone", "beta=small_circle,c=0.8", "64,128");
    assert!(header(&cone).contains("domain=2.5e-1:"), "{}", header(&cone));
}

#[test]
fn analyze_sections() {
    let dir = TempDir::new().unwrap();
    let s = gen(&dir, "sphere", "r=2", "");
    let out = lapgeo(&["analyze", s.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["class"]["verdict"], "homothetic");
    assert!((num(&v["class"]["c"]) - 0.5).abs() < 1e-3);
    assert_eq!(v["rank"]["rank"], 2);
    assert_eq!(v["config"]["fd_order"], 4);
    assert!(v["config"]["tolerances"]["const_tol"].is_number());

    let h = gen(&dir, "helicoid", "", "");
    let v = json(&lapgeo(&["analyze", h.to_str().unwrap(), "--report", "laplace"]));
    assert_eq!(v["laplace"]["degenerate"], true);
    assert!(v.get("class").is_none());
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = lapgeo(&["analyze", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("header"));
    assert_eq!(lapgeo(&["analyze", "/nonexistent.csv"]).status.code(), Some(2));
    let c = gen(&dir, "circle", "", "64");
    assert_eq!(lapgeo(&["analyze", c.to_str().unwrap(), "--fd-order", "3"]).status.code(), Some(2));
    assert_eq!(lapgeo(&["analyze", c.to_str().unwrap(), "--tol-const", "-1"]).status.code(), Some(2));
    assert_eq!(lapgeo(&["generate", "no_such_shape"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cc = gen(&dir, "cornu_cylinder", "", "");
    let out = lapgeo(&["check", "harmonic-mc", cc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    assert!(v["detail"]["residual"]["threshold"].is_number());

    let t = gen(&dir, "torus_revolution", "", "");
    assert_eq!(lapgeo(&["check", "homothetic", t.to_str().unwrap()]).status.code(), Some(1));
    let s = gen(&dir, "sphere", "", "");
    assert_eq!(lapgeo(&["check", "conformal", s.to_str().unwrap()]).status.code(), Some(0));

    let w = gen(&dir, "helix", "", "");
    assert_eq!(lapgeo(&["check", "homothetic", w.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(lapgeo(&["check", "harmonic-lt", s.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn spectrum_reports() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "gamma_eps", "eps=6", "");
    let v = json(&lapgeo(&["spectrum", g.to_str().unwrap(), "--minpoly", "4"]));
    assert_eq!(v["k_type"], 2);
    assert_eq!(v["order"], serde_json::json!([1, 3]));
    assert_eq!(v["minimal_polynomial"]["degree"], 2);
    assert_eq!(v["orthogonality"]["linearly_independent"], false);

    let d = gen(&dir, "two_circle_diagonal", "", "");
    let conj = dir.path().join("conj.csv");
    let out = lapgeo(&["spectrum", d.to_str().unwrap(), "--conjugate", conj.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["conjugate"]["unit_speed"], true);
    let c = lapgeo::Immersion::read_csv(std::fs::File::open(&conj).unwrap()).unwrap();
    for v in lapgeo::frenet::speed(&c) {
        assert!((v - 1.0).abs() <= 1e-6);
    }

    let e = gen(&dir, "ellipse_unit_speed", "", "");
    assert_eq!(json(&lapgeo(&["spectrum", e.to_str().unwrap()]))["k_type"], "infinite");

    let circle = gen(&dir, "circle", "", "");
    let out = lapgeo(&["spectrum", circle.to_str().unwrap(), "--conjugate", conj.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let dir = TempDir::new().unwrap();
    let s = gen(&dir, "torus_revolution", "", "64,64");
    let a = lapgeo(&["analyze", s.to_str().unwrap(), "--workers", "1"]);
    let b = lapgeo(&["analyze", s.to_str().unwrap(), "--workers", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_lapgeo"))
        .args(["analyze", s.to_str().unwrap()])
        .env("LAPGEO_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn fit_image_and_catalogue() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "revolution_laplace_in_plane", "", "");
    let v = json(&lapgeo(&["fit-image", p.to_str().unwrap()]));
    assert_eq!(v["fit"]["best"], "plane");
    let s = gen(&dir, "sphere", "", "");
    let v = json(&lapgeo(&["fit-image", s.to_str().unwrap(), "--points"]));
    assert_eq!(v["fit"]["best"], "sphere");

    let v = json(&lapgeo(&["catalogue"]));
    let names: Vec<&str> = v["result"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"gamma_eps") && names.contains(&"conformal_lt"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let c = gen(&dir, "circle", "", "");
    let report = dir.path().join("r.json");
    let out = lapgeo(&["--out", report.to_str().unwrap(), "check", "laplace-in-circle", c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["property"], "laplace-in-circle");
}
