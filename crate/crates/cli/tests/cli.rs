use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkm")).args(args).output().expect("spawn qkm")
}

fn config(text: &str) -> tempfile_path::Path {
    tempfile_path::write(text)
}

/// Scratch config files, removed on drop.
mod tempfile_path {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    pub struct Path(pub std::path::PathBuf);

    impl Drop for Path {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }

    pub fn write(text: &str) -> Path {
        static N: AtomicUsize = AtomicUsize::new(0);
        let p = std::env::temp_dir().join(format!(
            "qkm-cli-{}-{}.json",
            std::process::id(),
            N.fetch_add(1, Ordering::SeqCst)
        ));
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        Path(p)
    }
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn coefficients(table: &Value) -> Vec<String> {
    table["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["coefficient"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn free_energy_table() {
    let out = qkm(&["free-energy", "--order", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let f1 = &v["free_energy"]["f1"];
    assert_eq!(f1["sign_convention"], "(-lambda)^n");
    assert_eq!(coefficients(f1), ["1/4", "15/8", "33/2", "2511/16", "15633/10"]);
}

#[test]
fn pure_genus_two() {
    let out = qkm(&["omega", "--g", "2", "--n", "1", "--convention", "pure", "--order", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let c = coefficients(&json(&out)["table"]);
    assert_eq!(&c[3..], ["21", "966", "27954", "650076"]);
}

#[test]
fn full_omega11_counts_torus_maps() {
    let out = qkm(&["omega", "--g", "1", "--n", "1", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(coefficients(&json(&out)), ["1", "15", "198", "2511"]);
}

#[test]
fn deformation_starts_at_input() {
    let cfg = config(r#"{"eigenvalues": [{"e": "1/2", "r": 1}, {"e": "1/3", "r": 2}], "N": 3}"#);
    let out = qkm(&["deform", "--order", "1", "--config", cfg.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let t = v["tables"].as_array().unwrap();
    let lead: Vec<_> = t.iter().map(|x| coefficients(x)[0].clone()).collect();
    assert_eq!(lead, ["1/2", "1", "1/3", "2"]);
}

#[test]
fn perturbed_rho_breaks_identities() {
    let cfg = config(r#"{"verify": {"checks": ["identities"], "fixture": "perturb-rho"}}"#);
    let out = qkm(&["verify", "--order", "3", "--config", cfg.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let lemma1: Vec<_> = v.as_array().unwrap().iter().filter(|c| c["check"] == "lemma1").collect();
    assert!(!lemma1.is_empty());
    for c in lemma1 {
        assert_eq!(c["status"], "fail");
        assert_eq!(c["first_failing_order"], 1);
    }
}

#[test]
fn identities_pass_at_d2() {
    let cfg = config(
        r#"{"eigenvalues": [{"e": "1/2", "r": 1}, {"e": "1/3", "r": 2}], "verify": {"checks": ["identities", "appendix"]}}"#,
    );
    let out = qkm(&["verify", "--order", "3", "--config", cfg.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn empty_check_list() {
    let cfg = config(r#"{"verify": {"checks": []}}"#);
    let out = qkm(&["verify", "--config", cfg.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), Value::Array(vec![]));
}

#[test]
fn input_errors_exit_2() {
    let bad = config(r#"{"eigenvalues": [{"e": "1/2", "r": 1}], "bogus": 1}"#);
    assert_eq!(qkm(&["deform", "--config", bad.0.to_str().unwrap()]).status.code(), Some(2));
    let unknown = config(r#"{"verify": {"checks": ["nope"]}}"#);
    assert_eq!(qkm(&["verify", "--config", unknown.0.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qkm(&["omega", "--g", "3", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qkm(&["counts", "--kind", "planar", "--n", "2"]).status.code(), Some(2));
    assert_eq!(qkm(&["deform", "--config", "/nonexistent/qkm.json"]).status.code(), Some(2));
}

#[test]
fn counts_and_enumeration_agree() {
    let c = json(&qkm(&["counts", "--kind", "f1-series", "--n", "2"]));
    assert_eq!(c["value"], "15/8");
    let e = json(&qkm(&["enumerate", "--v", "2"]));
    assert_eq!(e["genus"]["1"]["weight"], "15/8");
    assert_eq!(e["matchings"], 105);
}

#[test]
fn output_is_deterministic() {
    for fmt in ["json", "csv", "pretty"] {
        let a = qkm(&["free-energy", "--order", "3", "--format", fmt]);
        let b = qkm(&["free-energy", "--order", "3", "--format", fmt]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn order_is_clamped() {
    let out = Command::new(env!("CARGO_BIN_EXE_qkm"))
        .args(["free-energy", "--order", "9"])
        .env("QKM_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clamped"));
    assert_eq!(coefficients(&json(&out)["free_energy"]["f1"]).len(), 3);
}

#[test]
fn positional_groups_and_csv() {
    let out = qkm(&["verify", "identities", "--order", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,d,points,status,first_failing_order\n"));
    assert!(text.contains("lemma1,1,2,pass,"));

    let out = qkm(&["omega", "--g", "1", "--n", "1", "--convention", "pure", "--order", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"Omega^TR_{1,1}(eps)\",(-lambda)^n,2,1,"), "{text}");
}
