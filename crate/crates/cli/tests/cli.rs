use std::process::{Command, Output};

use serde_json::Value;

fn graft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graft")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn path5_decomposition_matches_golden_file() {
    let out = graft(&["decompose", &fixture("path5.json"), "--seed-vertex", "a"]);
    assert!(out.status.success());
    let golden = std::fs::read(fixture("path5_decomposition.json")).unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&golden));

    let doc = json(&out);
    assert_eq!(doc["spine"], serde_json::json!(["a"]));
    assert_eq!(doc["fringe"], serde_json::json!([]));
    let teeth = doc["teeth"].as_array().unwrap();
    assert_eq!(teeth.len(), 2);
    assert_eq!(teeth[0]["root"], "u1");
    assert_eq!(teeth[0]["graft"]["terminals"], serde_json::json!(["u1", "v1"]));
    assert_eq!(teeth[1]["root"], "u2");
    assert_eq!(doc["skeleton_join"], serde_json::json!([1, 2]));
}

#[test]
fn synthesis_rebuilds_path5() {
    let out = graft(&[
        "synthesize",
        "--skeleton",
        &fixture("star_comb.json"),
        "--tooth",
        &fixture("tooth_b1.json"),
        "--tooth",
        &fixture("tooth_b2.json"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["graft"]["terminals"], serde_json::json!(["v1", "v2"]));
    assert_eq!(doc["join"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(doc["graft"]["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn path5_distances_and_join() {
    let doc = json(&graft(&["minjoin", &fixture("path5.json")]));
    assert_eq!(doc["size"], 4);
    let doc = json(&graft(&["dist", &fixture("path5.json"), "--from", "v1"]));
    assert_eq!(doc["distances"]["v2"], -4);
    assert_eq!(doc["distances"]["a"], -2);
}

#[test]
fn non_primal_root_has_no_certificate() {
    let doc = json(&graft(&["primal", &fixture("edge_empty.json"), "--root", "p"]));
    assert_eq!(doc["primal"], false);
    assert!(doc.get("certificate").is_none());
    let doc = json(&graft(&["primal", &fixture("path5.json"), "--root", "u1"]));
    assert_eq!(doc["primal"], true);
    assert!(doc.get("certificate").is_some());
}

#[test]
fn exit_codes() {
    assert_eq!(graft(&["verify", "--suite", "joins", "--max-n", "0", "--trials", "0"]).status.code(), Some(0));
    assert_eq!(graft(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(graft(&["minjoin", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(graft(&["dist", &fixture("path5.json"), "--from", "zz"]).status.code(), Some(2));
    assert_eq!(graft(&["gen", "--n", "5", "--m", "2"]).status.code(), Some(2));
    assert_eq!(graft(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn mutated_distances_fail_with_witness() {
    let out = graft(&["verify", "--suite", "distances", "--max-n", "4", "--trials", "5", "--seed", "1", "--mutate", "distance-off-by-one"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert!(doc["failure_count"].as_u64().unwrap() > 0);
    let witness = &doc["failures"][0]["witness"];
    assert!(witness["vertices"].as_array().unwrap().len() <= 2);
}

#[test]
fn env_overrides_seed_and_size() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_graft"))
            .args(["verify", "--suite", "joins", "--trials", "3"])
            .env("GRAFT_SEED", seed)
            .env("GRAFT_MAX_N", "3")
            .output()
            .unwrap()
    };
    let doc = json(&run("9"));
    assert_eq!(doc["seed"], 9);
    assert_eq!(doc["max_n"], 3);
}

#[test]
fn single_vertex_dot() {
    let dir = std::env::temp_dir().join(format!("graft-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("one.json");
    std::fs::write(&path, r#"{"vertices": ["z"], "edges": []}"#).unwrap();
    let out = graft(&["export", path.to_str().unwrap(), "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("shape=").count(), 2, "{text}");
    assert!(text.contains("\"z\""));
}
