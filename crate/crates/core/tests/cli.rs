use std::process::{Command, Output};

use serde_json::Value;

fn ltv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltv"))
        .args(args)
        .env_remove("LTV_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn checks(doc: &Value) -> &Vec<Value> {
    doc["body"]["checks"].as_array().unwrap()
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--q", "3", "--p", "3", "--max-n", "12", "--tier", "1"];
    let (a, b) = (ltv(&args), ltv(&args));
    let (da, db) = (json(&a), json(&b));
    assert_eq!(da["schema"], "ltv-cert/1");
    assert_eq!(da["sha256"], db["sha256"]);
    assert_eq!(da["body"], db["body"]);
    for c in checks(&da) {
        for key in ["name", "anchor", "range", "status"] {
            assert!(c[key].is_string(), "{c}");
        }
    }
}

#[test]
fn verify_reports_display_and_remark_failures() {
    let out = ltv(&["verify", "--q", "3", "--max-n", "12"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    let failed: Vec<&str> = checks(&doc)
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["anchor"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["first few terms", "remark on partner pairs"]);
    let congruence = checks(&doc)
        .iter()
        .find(|c| c["name"] == "Q_n = displayed b_n mod pi^2")
        .unwrap();
    assert_eq!(congruence["status"], "pass");
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        &["rfunc", "--q", "5", "--max-n", "100000"][..],
        &["decomp", "--q", "4", "--max-n", "6"],
        &["norms", "--q", "3"],
        &["lattices", "--p", "5"],
        &["coeffs", "--q", "4"],
        &["action", "--q", "7", "--max-n", "4"],
    ] {
        let out = ltv(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn action_csv_rows() {
    let out = ltv(&["action", "--q", "2", "--p", "2", "--max-n", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,Q_n,deg,gauss_val_at_0");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,(1),0,0"));
    // The displays omit pairs that contribute at q = 2.
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn p2_skips_injectivity_check() {
    let doc = json(&ltv(&["lattices", "--p", "2"]));
    let skipped: Vec<&Value> = checks(&doc).iter().filter(|c| c["status"] == "skipped").collect();
    assert_eq!(skipped.len(), 1);
    assert_eq!(skipped[0]["anchor"], "injectivity discs");
}

#[test]
fn configuration_errors_exit_three() {
    for args in [
        &["verify", "--p", "4"][..],
        &["verify", "--p", "3", "--q", "5"],
        &["verify"],
        &["verify", "--q", "3", "--format", "xml"],
        &["frobnicate"],
        &["verify", "--q", "3", "--unknown"],
    ] {
        assert_eq!(ltv(args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn thread_cap_and_out_file() {
    let dir = std::env::temp_dir().join(format!("ltv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let out = Command::new(env!("CARGO_BIN_EXE_ltv"))
        .args(["norms", "--q", "2", "--out", path.to_str().unwrap()])
        .env("LTV_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["body"]["params"]["command"], "norms");
    std::fs::remove_dir_all(&dir).unwrap();

    let bad = Command::new(env!("CARGO_BIN_EXE_ltv"))
        .args(["norms", "--q", "2"])
        .env("LTV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn decomp_q2_fails_only_on_partner_converse() {
    let out = ltv(&["decomp", "--q", "2", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    let failed: Vec<&Value> = checks(&doc).iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["witness"], "(m, l) = (8, 11) -> (3, 16)");
}
