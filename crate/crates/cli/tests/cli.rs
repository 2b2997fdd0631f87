use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn maasslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maasslab"))
        .args(args)
        .env_remove("MAASSLAB_PREC")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("maasslab-cli-{}-{name}", std::process::id()))
}

#[test]
fn classify_inverse_delta() {
    let o = maasslab(&["classify", "--form", "inv_delta", "--trunc", "20"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["case"], "Ib");
    assert_eq!(v["descriptor"]["certainty"], "exact");
    assert_eq!(v["subquotient_status"], "quotient-of-I");
    let pic = v["diagram"].as_str().unwrap();
    assert!(pic.contains("DS+(13)") && pic.contains("FD(13)"));
}

#[test]
fn classify_vector_valued() {
    let o = maasslab(&["classify", "--form", "estar_vv(2)", "--trunc", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["case"], "IIIb");
    let o = maasslab(&["classify", "--form", "e_poly", "--params", "3,3"]);
    assert_eq!(stdout_json(&o)["case"], "Ia");
}

#[test]
fn verify_bol_is_exact() {
    let o = maasslab(&["verify", "bol", "--form", "inv_delta"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"][0]["residual"], "exact-zero");
}

#[test]
fn lowering_e2star_gives_three_over_pi() {
    let o = maasslab(&["apply", "L", "--form", "e2star", "--trunc", "10"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["weight"], 0);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    let t = &terms[0];
    assert_eq!((t["u_freq"].as_str(), t["v_pow"].as_i64(), t["v_decay"].as_str()), (Some("0"), Some(0), Some("0")));
    assert_eq!(t["coeff"], json!([{"re": "3", "im": "0", "sym": {"pi": -1}}]));
}

#[test]
fn chains_are_checked_before_running() {
    let o = maasslab(&["apply", "L,D", "--form", "delta", "--trunc", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout_json(&o)["error"]["kind"], "domain");
    let o = maasslab(&["apply", "F,F", "--form", "inv_delta", "--trunc", "6"]);
    let direct = maasslab(&["build", "--form", "inv_delta", "--trunc", "6"]);
    assert_eq!(stdout_json(&o), stdout_json(&direct));
}

#[test]
fn serialized_forms_round_trip() {
    for (name, spec) in [("e2star", "e2star"), ("vv", "estar_vv(2)"), ("heis", "harmonic_eis(2)")] {
        let first = maasslab(&["build", "--form", spec, "--trunc", "6"]);
        assert!(first.status.success());
        let path = scratch(&format!("{name}.json"));
        std::fs::write(&path, &first.stdout).unwrap();
        let again = maasslab(&["build", "--form", path.to_str().unwrap()]);
        std::fs::remove_file(&path).ok();
        assert_eq!(stdout_json(&first), stdout_json(&again), "{spec}");
    }
}

#[test]
fn malformed_decay_is_a_schema_error() {
    let bad = r#"{"weight":0,"level":1,"trunc":"5","mode":"exact","terms":[
        {"coeff":[{"re":"1","im":"0","sym":{}}],"u_pow":0,"u_freq":"1","v_pow":0,"log_pow":0,"v_decay":"1/0","gamma":null}]}"#;
    let path = scratch("bad.json");
    std::fs::write(&path, bad).unwrap();
    let o = maasslab(&["build", "--form", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    let v = stdout_json(&o);
    assert_eq!(v["error"]["kind"], "schema");
    assert_eq!(v["error"]["pointer"], "/terms/0/v_decay");
}

#[test]
fn errors_are_json() {
    for args in [
        &["verify", "nonsense"][..],
        &["build", "--form", "no_such_form"],
        &["build", "--form", "eis_hol"],
        &["eval", "--form", "delta", "--tau", "0,-1"],
        &["build", "--bogus-flag"],
    ] {
        let o = maasslab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stdout_json(&o)["error"]["kind"].is_string(), "{args:?}");
    }
}

#[test]
fn precision_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_maasslab"));
        c.args(["eval", "--form", "delta", "--trunc", "10", "--tau", "0,1"]).args(extra);
        match env {
            Some(p) => c.env("MAASSLAB_PREC", p),
            None => c.env_remove("MAASSLAB_PREC"),
        };
        let v = stdout_json(&c.output().unwrap());
        v["value"]["re"].as_str().unwrap().len()
    };
    let default = run(None, &[]);
    let low = run(Some("64"), &[]);
    let flag = run(Some("64"), &["--prec", "256"]);
    assert!(low < default, "{low} vs {default}");
    assert_eq!(flag, default);
}

#[test]
fn delta_at_i() {
    let o = maasslab(&["eval", "--form", "delta", "--trunc", "20", "--tau", "0,1", "--mode", "float"]);
    let v = stdout_json(&o);
    let re: f64 = v["value"]["re"].as_str().unwrap().parse().unwrap();
    // Δ(i) = Γ(1/4)^24 / (2^24 π^18)
    assert!((re - 0.001_785_369_850_642_152).abs() < 1e-15);
}

#[test]
fn verify_exit_status_tracks_result() {
    let o = maasslab(&["verify", "kronecker", "--trunc", "8", "--out", "text"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.starts_with("kronecker"));
    assert!(text.contains("PASS"));
}

#[test]
fn diagrams_by_kind() {
    let o = maasslab(&["diagram", "kronecker"]);
    assert!(o.status.success());
    let o = maasslab(&["diagram", "laurent", "--params", "4,5"]);
    assert!(stdout_json(&o)["diagram"].as_str().unwrap().contains("×6"));
}

#[test]
fn verify_all_is_stable() {
    let a = maasslab(&["verify", "all", "--trunc", "20"]);
    let b = maasslab(&["verify", "all", "--trunc", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["results"].as_array().unwrap().len(), 10);
}
