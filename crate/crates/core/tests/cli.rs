use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use concordance::certificate::{reverifies_identically, Certificate, Verdict};
use concordance::forge::FamilyDescriptor;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordance")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn trefoil_commands() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", r#"{"matrix": [[-1, 1], [0, -1]]}"#);
    let o = bin(&["invariants", "--matrix", &t]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["alexander"], "t^2-t+1");
    assert_eq!(v["arf"], 1);

    let o = bin(&["sigsum", "--matrix", &t, "--p", "3"]);
    assert_eq!(stdout_json(&o), Value::from(-4));

    let o = bin(&["signature", "--matrix", &t, "--root", "6/1"]);
    assert_eq!(stdout_json(&o)["nullity"], 1);

    let o = bin(&["sigintegral", "--matrix", &t, "--tol", "1/1000"]);
    let v = stdout_json(&o);
    assert!(v["lo"].as_str().unwrap().starts_with('-'));

    let o = bin(&["algslice", "--matrix", &t]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["fox_milnor"], false);

    let o = bin(&["forge", "--matrix", &t, "--crossing", "3", "--count", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["invariants", "--matrix", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", r#"{"matrix": [[0, 2], [1, 0]]}"#);
    assert_eq!(bin(&["forge", "--matrix", &v, "--crossing", "6", "--count", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["sigintegral", "--matrix", &v, "--tol", "0"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.json", r#"{"matrix": [[1, 2, 3]]}"#);
    assert_eq!(bin(&["invariants", "--matrix", &bad]).status.code(), Some(1));
}

#[test]
fn blanchfield_command() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", r#"{"matrix": [[0, 2], [1, 0]]}"#);
    let o = bin(&["blanchfield", "--matrix", &v, "--pair", "1", "2", "--self-annihilating"]);
    assert_eq!(o.status.code(), Some(0));
    let j = stdout_json(&o);
    assert_eq!(j["self_annihilating"].as_array().unwrap().len(), 2);
    assert_eq!(j["module"]["dimension"], 2);
    assert!(j["pair"]["value"].is_string());
}

#[test]
fn pipeline_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", r#"{"matrix": [[0, 2], [1, 0]]}"#);
    let out = dir.path().join("run");
    let o = bin(&["pipeline", "--matrix", &v, "--crossing", "6", "--count", "3", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let family_text = fs::read_to_string(out.join("family.json")).unwrap();
    let family: FamilyDescriptor = serde_json::from_str(&family_text).unwrap();
    assert_eq!(family.companions.iter().map(|c| c.prime).collect::<Vec<_>>(), vec![3, 7, 11]);
    let mut count = 0;
    for k in 1..=26 {
        let text = fs::read_to_string(out.join(format!("certificate_{k:03}.json"))).unwrap();
        let cert: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(cert.verdict, Verdict::Obstructed);
        assert!(reverifies_identically(&cert));
        count += 1;
    }
    assert_eq!(count, 26);
    assert!(!out.join("certificate_027.json").exists());

    let fam = out.join("family.json");
    let fam = fam.to_str().unwrap();
    let a = bin(&["certify", "--family", fam, "--combo", "0,1,-1"]);
    let b = bin(&["certify", "--family", fam, "--combo", "0,1,-1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(bin(&["certify", "--family", fam, "--combo", "0,0,0"]).status.code(), Some(2));

    let d = write(dir.path(), "d.json", "[1, -3, 1]");
    assert_eq!(bin(&["split", "--family", fam, "--index", "2", "--n", "-2", "--delta", &d]).status.code(), Some(0));
    let dk = write(dir.path(), "dk.json", r#"{"coefficients": [2, -5, 2]}"#);
    let o = bin(&["split", "--family", fam, "--index", "1", "--n", "1", "--delta", &dk]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout_json(&o)["verdict"], "INCONCLUSIVE");
    assert_eq!(bin(&["split", "--family", fam, "--index", "1", "--n", "0", "--delta", &d]).status.code(), Some(2));

    let again = dir.path().join("again.json");
    let o = bin(&["forge", "--matrix", &v, "--crossing", "6", "--count", "3", "-o", again.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(again).unwrap(), family_text);
}
