use std::process::{Command, Output};

use serde_json::Value;

fn kmtower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmtower")).args(args).env_remove("KMTOWER_CONFIG").output().unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn without_timing(mut v: Vec<Value>) -> Vec<Value> {
    for r in &mut v {
        r["elapsed_ms"] = Value::Null;
    }
    v
}

#[test]
fn verify_quick_profile_passes_and_is_deterministic() {
    let a = kmtower(&["verify", "all", "--profile", "quick"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = kmtower(&["verify", "all", "--profile", "quick"]);
    let (ra, rb) = (reports(&a), reports(&b));
    let order: Vec<&str> = ra.iter().map(|r| r["check_id"].as_str().unwrap()).collect();
    let mut dedup = order.clone();
    dedup.dedup();
    assert_eq!(
        dedup,
        ["serre", "lemma-2.8", "lemma-3.1", "lemma-3.2", "lemma-3.3", "thm-3.5", "thm-1.2", "wbar", "tower", "naturality"]
    );
    assert_eq!(without_timing(ra), without_timing(rb));
}

#[test]
fn exit_codes() {
    assert_eq!(kmtower(&["verify", "thm-3.5", "--m", "9", "--n", "9"]).status.code(), Some(3));
    assert_eq!(kmtower(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(kmtower(&["--config", "/nonexistent/kmtower.toml", "verify", "wbar"]).status.code(), Some(2));
    assert_eq!(kmtower(&["verify", "lemma-3.1", "--family", "B1t", "--l", "3"]).status.code(), Some(2));
}

#[test]
fn gcm_files() {
    let dir = tempfile::tempdir().unwrap();
    let finite = dir.path().join("a2.json");
    std::fs::write(&finite, r#"{"size": 2, "matrix": [[2, -1], [-1, 2]]}"#).unwrap();
    let out = kmtower(&["gcm", "classify", finite.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["witnesses"][0]["detail"]["result"], "NotInFamilies");

    let affine = dir.path().join("a2t.json");
    std::fs::write(&affine, r#"{"size": 3, "matrix": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]}"#).unwrap();
    let out = kmtower(&["gcm", "classify", affine.to_str().unwrap()]);
    assert_eq!(reports(&out)[0]["witnesses"][0]["detail"]["family"], "A1t");

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"size": 2, "matrix": [[2, -1], [0, 2]]}"#).unwrap();
    let out = kmtower(&["gcm", "validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(reports(&out)[0]["status"], "fail");
    assert_eq!(kmtower(&["gcm", "validate", finite.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn config_is_echoed_and_env_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("k.toml");
    std::fs::write(&cfg, "height_bound = 20\n").unwrap();
    let out = kmtower(&["--config", cfg.to_str().unwrap(), "verify", "wbar", "--l", "3"]);
    assert_eq!(reports(&out)[0]["params"]["config"]["height_bound"], 20);

    let out = Command::new(env!("CARGO_BIN_EXE_kmtower"))
        .args(["verify", "wbar", "--l", "3"])
        .env("KMTOWER_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(reports(&out)[0]["params"]["config"]["height_bound"], 20);

    let out = kmtower(&["verify", "wbar", "--l", "3"]);
    assert_eq!(reports(&out)[0]["params"]["config"]["height_bound"], 12);
    assert_eq!(reports(&out)[0]["params"]["config"]["search_depth"], 8);

    let out = kmtower(&["--seed", "5", "verify", "naturality", "--pairs", "10"]);
    assert_eq!(reports(&out)[0]["params"]["seed"], 5);
}

#[test]
fn roots_and_commutator() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("roots.json");
    let out = kmtower(&["roots", "enumerate", "--family", "A2odd", "--l", "3", "--height", "4", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["height_bound"], 4);
    assert!(doc["roots"].as_array().unwrap().contains(&serde_json::json!([0, 0, 2, 1])));

    let out = kmtower(&[
        "commutator", "--type", "C3", "--ring", "zmod:5", "--a", "0,0,1", "--b", "0,1,0", "--r", "2", "--rp", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["commutator"]["factors"].as_array().unwrap().len(), 2);
    let out = kmtower(&["commutator", "--type", "A2", "--ring", "int", "--a", "1,-1", "--b", "0,1", "--r", "1", "--rp", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
