use std::path::PathBuf;
use std::process::Command;

fn aci(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_aci")).args(args).output().expect("aci runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aci-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn list_names_every_system() {
    let (code, out) = aci(&["list"]);
    assert_eq!(code, 0);
    for name in ["henon-heiles", "kowalewski", "clebsch"] {
        assert!(out.contains(name), "{out}");
    }
}

#[test]
fn analyze_periods_and_prym_chain() {
    let dir = scratch("chain");
    let (code, out) = aci(&["analyze", "henon-heiles", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    for f in ["report.json", "samples.csv", "trajectory.csv", "periods.json"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let (code, _) = aci(&["fit", dir.join("samples.csv").to_str().unwrap(), "--weights", "1,4", "--degree", "8", "--normalize", "0,2"]);
    assert_eq!(code, 0);
    let prym = dir.join("prym.json");
    let (code, _) = aci(&["prym", dir.join("periods.json").to_str().unwrap(), "--involution", "x->-x", "--out", prym.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(prym).unwrap()).unwrap();
    assert_eq!(v["split"]["delta_delta"], serde_json::json!([1, 2]));
}

#[test]
fn periods_of_an_elliptic_curve() {
    let dir = scratch("periods");
    let curve = dir.join("curve.json");
    std::fs::write(&curve, r#"{ "expression": "(1 - x^2)(1 - x^2/4)" }"#).unwrap();
    let (code, out) = aci(&["periods", curve.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["bilinear_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn escaping_orbit_fails_integrate() {
    let (code, _) = aci(&["integrate", "henon-heiles", "--x0", "0,-10,0,0", "--t", "5"]);
    assert_eq!(code, 1);
    let (code, _) = aci(&["integrate", "henon-heiles", "--x0", "0.05,0.02,0,0.03", "--t", "5"]);
    assert_eq!(code, 0);
}

#[test]
fn bad_config_is_an_error() {
    let dir = scratch("config");
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, r#"{ "bogus": 1 }"#).unwrap();
    let (code, _) = aci(&["analyze", "henon-heiles", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
}
