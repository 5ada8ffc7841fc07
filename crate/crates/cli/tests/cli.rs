use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn normpit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normpit"))
        .args(args)
        .env_remove("NORMPIT_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("normpit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn node_has_three_relations() {
    let out = normpit(&["normalize", &data("node.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["relations"].as_array().unwrap().len(), 3);
    assert_eq!(doc["steps"].as_array().unwrap().len(), 1);
    assert_eq!(doc["alpha"], "T1");
}

#[test]
fn zero_circuit_exits_one() {
    let out = normpit(&["pit", &data("zero_circuit.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verdict"], "zero");
}

#[test]
fn nonzero_circuit_gets_a_witness() {
    let out = normpit(&["pit", &data("circuit.json"), "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], "nonzero");
    assert_eq!(doc["seed"], 5);
    assert_eq!(doc["point"].as_array().unwrap().len(), 3);
    assert_ne!(doc["value"], "[0,0]");
    if doc["route"]["name"] == "hard" {
        assert_eq!(doc["route"]["verified"], true);
    }
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_normpit"))
        .args(["pit", &data("circuit.json")])
        .env("NORMPIT_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["seed"], 17);
}

#[test]
fn bad_input_exits_two() {
    let junk = scratch("junk.json", "{ not json");
    assert_eq!(normpit(&["gb", junk.to_str().unwrap()]).status.code(), Some(2));
    let wrong = scratch("curve3.json", r#"{"field":"QQ","vars":["x","y","z"],"f":"x*y - z"}"#);
    assert_eq!(normpit(&["normalize", wrong.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(normpit(&["pit", &data("node.json")]).status.code(), Some(2));
    assert_eq!(normpit(&["gb", "/nonexistent/ideal.json"]).status.code(), Some(2));
    assert_eq!(normpit(&["eliminate", &data("ideal.json"), "--vars", "w"]).status.code(), Some(2));
    let positive_dim = scratch("line.json", r#"{"field":"QQ","vars":["x","y"],"generators":["x - y"]}"#);
    assert_eq!(normpit(&["maxideals", positive_dim.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn caps_exit_three() {
    let out = normpit(&["gb", &data("ideal.json"), "--max-pairs", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource cap"));
    assert_eq!(normpit(&["normalize", &data("node.json"), "--timeout", "0"]).status.code(), Some(3));
}

#[test]
fn gb_and_elimination() {
    let out = normpit(&["gb", &data("ideal.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["order"], "lex");
    let basis = doc["basis"].as_array().unwrap();
    // a lex basis of a zero-dimensional ideal contains a polynomial in z alone
    let in_z = |b: &Value| b["terms"].as_array().unwrap().iter().all(|t| t["exps"][0] == 0 && t["exps"][1] == 0);
    assert_eq!(basis.iter().filter(|b| in_z(b)).count(), 1);
    let out = normpit(&["eliminate", &data("ideal.json"), "--vars", "x,y"]);
    let doc = json_of(&out);
    assert_eq!(doc["vars"], serde_json::json!(["z"]));
    assert_eq!(doc["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn maximal_ideals_of_two_square_roots() {
    let doc = json_of(&normpit(&["maxideals", &data("points.json")]));
    assert_eq!(doc["count"], 1);
    let m = &doc["maximal_ideals"][0];
    assert_eq!(m["residue_degree"], 4);
    assert_eq!(m["primitive"]["minpoly"].as_array().unwrap().len(), 5);
}

#[test]
fn hitting_set_sizes() {
    let doc = json_of(&normpit(&["hitset", "--n", "3", "--d", "3", "--delta", "1", "--field", "GF(7)"]));
    let size = doc["size"].as_u64().unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len() as u64, size);
    let inhom = json_of(&normpit(&["hitset", "--n", "3", "--d", "3", "--delta", "1", "--inhom"]));
    assert_eq!(inhom["nvars"], 3);
    assert_eq!(inhom["parameters"]["homogeneous"], false);
    assert_eq!(normpit(&["hitset", "--n", "3", "--d", "3", "--delta", "1", "--field", "GF(6)"]).status.code(), Some(2));
}

#[test]
fn verify_agrees() {
    let out = normpit(&["verify", "--suite", "all", "--seed", "42", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json_of(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["suites"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["normalize", &data("node.json")],
        vec!["pit", &data("circuit.json")],
        vec!["gb", &data("ideal.json")],
        vec!["verify", "--suite", "pit", "--seed", "3"],
    ] {
        let a = normpit(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>());
        let b = normpit(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = normpit(&["verify", "--suite", "gb", "--jobs", "1"]);
    let b = normpit(&["verify", "--suite", "gb", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("normpit-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("node.out.json");
    let out = normpit(&["normalize", &data("node.json"), "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc["relations"].as_array().unwrap().len(), 3);
}
