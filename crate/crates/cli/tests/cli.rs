use std::process::Command;

fn linkage(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_linkage")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn strip_elapsed(mut v: serde_json::Value) -> serde_json::Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn cgs_trials_pass() {
    let (code, out) = linkage(&["k6", "cgs", "--trials", "10", "--seed", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS odd sum in every trial: 10/10 odd"));
}

#[test]
fn trial_without_seed_is_usage_error() {
    assert_eq!(linkage(&["k6", "cgs", "--trials", "3"]).0, 2);
}

#[test]
fn bier_verify_passes() {
    let (code, out) = linkage(&["bier", "verify", "--k", "2", "--l", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS self-dual"));
}

#[test]
fn unknown_flag_exits_2() {
    assert_eq!(linkage(&["k6", "base", "--no-such-flag"]).0, 2);
    assert_eq!(linkage(&["no-such-command"]).0, 2);
}

#[test]
fn missing_input_exits_2() {
    assert_eq!(linkage(&["k6", "matrix", "/nonexistent/emb.json"]).0, 2);
}

#[test]
fn json_report_is_deterministic() {
    let args = ["ledger", "path-realize", "--k", "2", "--l", "1", "--z", "2", "--json"];
    let (c1, a) = linkage(&args);
    let (c2, b) = linkage(&args);
    assert_eq!((c1, c2), (0, 0));
    let a: serde_json::Value = serde_json::from_str(&a).unwrap();
    let b: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(strip_elapsed(a), strip_elapsed(b));
}

#[test]
fn artifact_round_trips_through_matrix() {
    let dir = std::env::temp_dir().join(format!("linkage-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let emb = dir.join("emb.json");
    let emb = emb.to_str().unwrap();
    assert_eq!(linkage(&["k6", "realize", "--z", "1", "-o", emb]).0, 0);
    let (code, out) = linkage(&["k6", "matrix", emb, "--json"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["inputs"].as_object().unwrap().len(), 1);
    assert!(v["values"]["link_matrix"].as_str().unwrap().contains("123 456    3"));
    std::fs::remove_dir_all(&dir).ok();
}
