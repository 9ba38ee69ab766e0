use std::path::Path;
use std::process::{Command, Output};

fn loglap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loglap")).args(args).env_remove("LOGLAP_THREADS").output().expect("spawn loglap")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses a CSV body into rows of fields, checking the header.
fn rows(text: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(header));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn value(rows: &[Vec<String>], name: &str, index: &str) -> f64 {
    rows.iter().find(|r| r[0] == name && r[1] == index).unwrap()[2].parse().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn grid_values(path: &Path) -> Vec<f64> {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn coeffs_first_order() {
    let r = rows(&stdout(&loglap(&["coeffs", "--dim", "1", "--order", "1"])), "name,index,value");
    assert!((value(&r, "alpha", "0") + 1.1544313298030657).abs() < 1e-12);
    assert!((value(&r, "alpha", "1") - 1.0).abs() < 1e-12);
    let r = rows(&stdout(&loglap(&["coeffs", "--dim", "2", "--order", "1"])), "name,index,value");
    assert!((value(&r, "alpha", "1") - 1.0 / std::f64::consts::PI).abs() < 1e-12);
    // 17 significant digits
    let mantissa = r[0][2].split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17);
}

#[test]
fn order_zero_is_a_usage_error() {
    assert_eq!(loglap(&["coeffs", "--dim", "1", "--order", "0"]).status.code(), Some(2));
    assert_eq!(loglap(&["coeffs", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(loglap(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn radii_second_order_line() {
    let r = rows(&stdout(&loglap(&["radii", "--m", "2", "--dim", "1"])), "m,dim,r0,rm");
    let r0: f64 = r[0][2].parse().unwrap();
    let rm: f64 = r[0][3].parse().unwrap();
    assert!((r0 - 0.5614594836).abs() < 1e-10);
    assert!((rm - 0.5614594836).abs() < 1e-10);
}

#[test]
fn eig_reports_ascending_values() {
    let dir = tempfile::tempdir().unwrap();
    let dom = write(dir.path(), "dom.json", r#"{"dim": 1, "pieces": [{"type": "interval", "a": -0.25, "b": 0.25}]}"#);
    let vec_path = dir.path().join("vec.csv");
    let out = loglap(&[
        "eig",
        "--form",
        "Q",
        "--m",
        "2",
        "--domain",
        &dom,
        "--cells",
        "200",
        "--count",
        "5",
        "--vectors",
        vec_path.to_str().unwrap(),
    ]);
    let r = rows(&stdout(&out), "index,eigenvalue,residual");
    assert_eq!(r.len(), 5);
    let vals: Vec<f64> = r.iter().map(|row| row[1].parse().unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
    let v = std::fs::read_to_string(&vec_path).unwrap();
    assert!(v.starts_with("x,measure,v1,v2,v3,v4,v5\n"));
    assert_eq!(v.lines().count(), 201);
}

#[test]
fn eig_precondition_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // far outside B_{r0/2} for m = 2
    let dom = write(dir.path(), "big.json", r#"{"dim": 1, "pieces": [{"type": "interval", "a": -1, "b": 1}]}"#);
    let out = loglap(&["eig", "--form", "Q", "--m", "2", "--domain", &dom, "--cells", "50"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let bad = write(dir.path(), "bad.json", r#"{"dim": 1, "pieces": [{"type": "triangle"}]}"#);
    assert_eq!(loglap(&["eig", "--form", "I", "--m", "1", "--domain", &bad]).status.code(), Some(2));
}

#[test]
fn fk_flags_the_ball() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write(dir.path(), "ball.json", r#"{"dim": 1, "pieces": [{"type": "interval", "a": -0.1, "b": 0.1}]}"#);
    let split = write(
        dir.path(),
        "split.json",
        r#"{"dim": 1, "pieces": [{"type": "interval", "a": -0.14, "b": -0.04}, {"type": "interval", "a": 0.04, "b": 0.14}]}"#,
    );
    let out = loglap(&["fk", "--m", "2", "--domain", &ball, "--domain", &split, "--cells-per-unit", "1000"]);
    let r = rows(&stdout(&out), "index,file,measure,cells,lambda1,is_ball,is_min");
    assert_eq!(r.len(), 2);
    assert_eq!((r[0][5].as_str(), r[0][6].as_str()), ("true", "true"));
    assert_eq!((r[1][5].as_str(), r[1][6].as_str()), ("false", "false"));
    let l0: f64 = r[0][4].parse().unwrap();
    let l1: f64 = r[1][4].parse().unwrap();
    assert!(l1 > 1.01 * l0);
}

#[test]
fn zero_grid_maps_to_zero_grid() {
    let dir = tempfile::tempdir().unwrap();
    let zeros = vec!["0.0"; 64].join(",");
    let g = write(
        dir.path(),
        "zero.json",
        &format!(
            r#"{{"dim": 1, "origin": [-4.0], "spacing": [0.125], "shape": [64], "holder": {{"alpha": 1.0, "const": 0.0}}, "values": [{zeros}]}}"#
        ),
    );
    for args in [
        vec!["--op", "L", "--m", "2", "--method", "quad"],
        vec!["--op", "K", "--order", "1", "--method", "quad"],
        vec!["--op", "L", "--m", "1", "--method", "fft"],
        vec!["--op", "fraclap", "--s", "0.3", "--method", "fft"],
    ] {
        let out = dir.path().join("out.json");
        let mut full = vec!["apply", "--input", &g, "--output", out.to_str().unwrap()];
        full.extend(args.iter().copied());
        stdout(&loglap(&full));
        assert!(grid_values(&out).iter().all(|v| *v == 0.0), "{args:?}");
        assert!(dir.path().join("out.json.budget.csv").exists());
    }
}

#[test]
fn quadrature_and_fft_agree_on_bump() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("bump.json");
    let (q, f) = (dir.path().join("q.json"), dir.path().join("f.json"));
    stdout(&loglap(&["bump", "--nodes", "512", "--half-width", "20", "--output", b.to_str().unwrap()]));
    let b = b.to_str().unwrap();
    stdout(&loglap(&[
        "apply",
        "--op",
        "L",
        "--m",
        "1",
        "--method",
        "quad",
        "--input",
        b,
        "--output",
        q.to_str().unwrap(),
    ]));
    stdout(&loglap(&[
        "apply",
        "--op",
        "L",
        "--m",
        "1",
        "--method",
        "fft",
        "--input",
        b,
        "--output",
        f.to_str().unwrap(),
    ]));
    let (q, f) = (grid_values(&q), grid_values(&f));
    let sup = q.iter().zip(&f).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(sup <= 1e-3, "sup difference {sup}");
    let budget = std::fs::read_to_string(dir.path().join("q.json.budget.csv")).unwrap();
    assert!(budget.starts_with("node,value,truncation_bound,rounding_bound,error_budget\n"));
}

#[test]
fn riesz_outside_range_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("bump.json");
    stdout(&loglap(&["bump", "--nodes", "256", "--half-width", "20", "--output", b.to_str().unwrap()]));
    let out = dir.path().join("r.json");
    for method in ["quad", "fft"] {
        let o = loglap(&[
            "apply",
            "--op",
            "riesz",
            "--s",
            "0.6",
            "--dim",
            "1",
            "--method",
            method,
            "--input",
            b.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&o.stderr).contains("N/2"));
    }
    // no Fourier multiplier for the kernel operator alone
    let o = loglap(&[
        "apply",
        "--op",
        "K",
        "--order",
        "1",
        "--method",
        "fft",
        "--input",
        b.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn written_grids_read_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("bump.json");
    stdout(&loglap(&["bump", "--nodes", "256", "--half-width", "20", "--output", b.to_str().unwrap()]));
    let original = grid_values(&b);
    // |ξ|⁰ = 1: the grid goes through a read, two FFTs and a write
    let out = dir.path().join("same.json");
    stdout(&loglap(&[
        "apply",
        "--op",
        "fraclap",
        "--s",
        "0",
        "--method",
        "fft",
        "--input",
        b.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]));
    let back = grid_values(&out);
    let worst = original.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-13, "{worst}");
}

#[test]
fn expand_reports_slope_and_threads_flag() {
    let out = loglap(&["--threads", "1", "expand", "--side", "fraclap", "--n", "1"]);
    let r = rows(&stdout(&out), "s,sup_norm,l2_norm");
    assert_eq!(r.len(), 9);
    let err = String::from_utf8_lossy(&out.stderr);
    let slope: f64 = err.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((slope - 2.0).abs() < 0.2, "{err}");
    assert_eq!(loglap(&["--threads", "0", "radii", "--m", "1", "--dim", "1"]).status.code(), Some(2));
}
