use std::process::{Command, Output};

fn anglat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anglat"))
        .args(args)
        .env_remove("ANGLAT_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn value(v: &serde_json::Value) -> (f64, f64) {
    (v["value"]["re"].as_f64().unwrap(), v["value"]["im"].as_f64().unwrap())
}

#[test]
fn eval_c01_at_two() {
    let v = json(&anglat(&["eval", "--family", "c01", "--s", "2"]));
    let (re, im) = value(&v);
    assert!((re - 6.026812039692).abs() < 1e-9, "{re}");
    assert_eq!(im, 0.0);
    assert_eq!(v["family"], "C(0,1)");
}

#[test]
fn c14_routes_agree() {
    let a = value(&json(&anglat(&["eval", "--family", "c14", "--m", "1", "--s", "3+1i"])));
    let b = value(&json(&anglat(&["eval", "--family", "C", "--n", "1", "--m", "4", "--s", "3+1i"])));
    let c4 = value(&json(&anglat(&["eval", "--family", "C", "--n", "4", "--m", "1", "--s", "3+1i"])));
    let c0 = value(&json(&anglat(&["eval", "--family", "c01", "--s", "3+1i"])));
    assert!((a.0 - b.0).abs() < 1e-10 && (a.1 - b.1).abs() < 1e-10);
    // cos 4θ = 8cos⁴θ − 8cos²θ + 1 and C(2,1) = C(0,1)/2
    let want = (8.0 * c4.0 - 3.0 * c0.0, 8.0 * c4.1 - 3.0 * c0.1);
    assert!((a.0 - want.0).abs() < 1e-9 && (a.1 - want.1).abs() < 1e-9, "{a:?} {want:?}");
}

#[test]
fn malformed_exponent_is_a_usage_error() {
    let out = anglat(&["eval", "--family", "c01", "--s", "1+x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_threads_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_anglat"))
        .args(["eval", "--family", "c01", "--s", "2"])
        .env("ANGLAT_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn delta3_reports_parts_and_residual() {
    let v = json(&anglat(&["delta3", "--m", "1", "--s", "0.5+19.8i", "--parts", "--residual"]));
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    assert!(v["c_tilde"]["re"].is_f64() && v["s_tilde"]["im"].is_f64());
    let scale = v["log_scale"].as_f64().unwrap();
    let mant = v["mantissa"]["re"].as_f64().unwrap();
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((mant * scale.exp() - re).abs() <= 1e-12 * re.abs());
}

#[test]
fn quick_selfcheck_passes() {
    let out = anglat(&["selfcheck", "--quick"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn injected_fault_is_caught() {
    let out = anglat(&["selfcheck", "--quick", "--inject-fault", "chebyshev"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().find(|l| l.starts_with("C(1,8) from T8")).unwrap();
    assert!(line.ends_with("FAIL"), "{line}");
}

#[test]
fn zeros_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let out = anglat(&["zeros", "--family", "c14", "--m", "1", "--tmax", "20", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,t,t_lo,t_hi,refined_tol"));
    let ts: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(ts.iter().any(|t| (t - 19.80599).abs() < 1e-4), "{ts:?}");
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn hist_csv_columns() {
    let out = anglat(&["hist", "--family", "beta4", "--tmax", "150"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("bin,density,wigner"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    let width = rows[1][0] - rows[0][0];
    let mass: f64 = rows.iter().map(|r| r[1] * width).sum();
    // densities are printed to six decimals
    assert!((mass - 1.0).abs() < 1e-5, "{mass}");
}

#[test]
fn contours_json_on_small_grid() {
    let out = anglat(&["contours", "--sigma", "0:1", "--t", "18:20", "--nx", "20", "--nt", "30"]);
    let v = json(&out);
    let fields: Vec<&str> = v.as_array().unwrap().iter().map(|f| f["field"].as_str().unwrap()).collect();
    assert_eq!(fields, ["re", "im"]);
    for f in v.as_array().unwrap() {
        let lines = f["polylines"].as_array().unwrap();
        assert_eq!(lines.len(), f["closed"].as_array().unwrap().len());
        assert!(!lines.is_empty());
    }
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = anglat(&["zeros", "--family", "nope", "--tmax", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hist_needs_enough_zeros() {
    let out = anglat(&["hist", "--family", "beta4", "--tmax", "80"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient"));
}
