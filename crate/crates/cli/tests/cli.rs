use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn catena(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catena"))
        .args(args)
        .env_remove("CATENA_CAP")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const M3: &str = r#"{"elements":["0","a","b","c","1"],"covers":[["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#;
const N5: &str = r#"{"elements":["0","a","b","c","1"],"covers":[["0","a"],["0","b"],["b","c"],["a","1"],["c","1"]]}"#;
const CHAIN: &str = r#"{"elements":["0","1","2"],"covers":[["0","1"],["1","2"]]}"#;
const F2_IN_F2_F4: &str =
    r#"{"top":{"construct":"product","factors":[{"construct":"zmod","n":2},{"construct":"gf","p":2,"deg":2}]}}"#;

#[test]
fn diamond_is_graded_not_distributive() {
    let dir = TempDir::new().unwrap();
    let m3 = write(&dir, "m3.json", M3);
    let out = catena(&["lattice", "--input", &m3, "--checks", "graded,distributive"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["checks"]["graded"], true);
    assert_eq!(v["checks"]["distributive"], false);
    assert!(v["checks"].get("length").is_none());
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn chain_passes_everything_and_pentagon_is_not_graded() {
    let dir = TempDir::new().unwrap();
    let chain = write(&dir, "chain.json", CHAIN);
    let v = json(&catena(&["lattice", "--input", &chain]));
    for key in ["distributive", "graded", "left_modular", "p_extension", "supersolvable", "two_catenarian"] {
        assert_eq!(v["checks"][key], true, "{key}");
    }
    let n5 = write(&dir, "n5.json", N5);
    let v = json(&catena(&["lattice", "--input", &n5, "--checks", "graded"]));
    assert_eq!(v["checks"]["graded"], false);
}

#[test]
fn dot_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let n5 = write(&dir, "n5.json", N5);
    let out = catena(&["lattice", "--input", &n5, "--format", "dot"]);
    assert!(out.status.success());
    let spec = catena::lattice::parse_dot(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let rebuilt = spec.build().unwrap();
    let original: catena::lattice::LatticeSpec = serde_json::from_str(N5).unwrap();
    let original = original.build().unwrap();
    let map: Vec<usize> = (0..original.len()).map(|i| rebuilt.index_of(original.label(i)).unwrap()).collect();
    assert!(original.is_isomorphism(&rebuilt, &map));
}

#[test]
fn ring_extension_report() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "ext.json", F2_IN_F2_F4);
    let out = catena(&["ring", "--input", &path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["members"], 3);
    assert_eq!(v["graded"], true);
    assert_eq!(v["t_closure"], "T1");
    assert_eq!(v["edge_types"]["T0 -> T1"], "decomposed");
    assert_eq!(v["edge_types"]["T1 -> T2"], "inert");
    assert!(v["checks"].as_object().unwrap().values().all(|c| !c.as_str().unwrap().starts_with("fail")));

    let dot = catena(&["ring", "--input", &path, "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.contains("color=darkgreen") && text.contains("color=blue"));
}

#[test]
fn field_and_trivial_extensions() {
    let dir = TempDir::new().unwrap();
    let f4 = write(&dir, "f4.json", r#"{"construct":"gf","p":2,"deg":2}"#);
    let v = json(&catena(&["ring", "--input", &f4]));
    assert_eq!(v["members"], 2);
    assert_eq!(v["edge_types"]["T0 -> T1"], "inert");
    let same = write(&dir, "same.json", r#"{"top":{"construct":"zmod","n":4},"base_generators":[1]}"#);
    let v = json(&catena(&["ring", "--input", &same]));
    assert_eq!(v["members"], 1);
}

#[test]
fn selected_ring_checks_only() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "ext.json", F2_IN_F2_F4);
    let v = json(&catena(&["ring", "--input", &path, "--checks", "edge_classification"]));
    assert_eq!(v["checks"].as_object().unwrap().len(), 1);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let m3 = write(&dir, "m3.json", M3);
    let out = catena(&["lattice", "--input", &m3, "--checks", "graded,bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let path = write(&dir, "ext.json", F2_IN_F2_F4);
    assert_eq!(catena(&["ring", "--input", &path, "--checks", "nope"]).status.code(), Some(2));
    let bad = write(&dir, "bad.json", "{ not json");
    assert_eq!(catena(&["ring", "--input", &bad]).status.code(), Some(2));
    let not_lattice = write(&dir, "v.json", r#"{"elements":["0","a","b"],"covers":[["0","a"],["0","b"]]}"#);
    assert_eq!(catena(&["lattice", "--input", &not_lattice]).status.code(), Some(2));
    assert_eq!(catena(&["lattice", "--input", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(catena(&["verify", "--checks", "everything"]).status.code(), Some(2));
    assert_eq!(catena(&["verify", "--cap", "0"]).status.code(), Some(2));
    let too_big = catena(&["ring", "--input", &path, "--cap", "4"]);
    assert_eq!(too_big.status.code(), Some(2));

    let env = Command::new(env!("CARGO_BIN_EXE_catena"))
        .args(["lattice", "--input", &m3])
        .env("CATENA_CAP", "zero")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn groups_and_towers() {
    let dir = TempDir::new().unwrap();
    let s4 = write(&dir, "s4.json", r#"{"points":4,"generators":[[2,1,3,4],[2,3,4,1]]}"#);
    let v = json(&catena(&["group", "--input", &s4]));
    assert_eq!(v["report"]["supersolvable_group"], false);
    assert_eq!(v["report"]["graded"], false);
    assert_eq!(v["report"]["subgroups"], 30);
    let v = json(&catena(&["group", "--name", "D4"]));
    assert_eq!(v["report"]["supersolvable_group"], true);
    assert_eq!(v["report"]["graded"], true);
    assert_eq!(catena(&["group", "--input", &s4, "--cap", "12"]).status.code(), Some(2));

    let tower = write(&dir, "t.json", r#"{"p":2,"n":12}"#);
    let v = json(&catena(&["tower", "--input", &tower]));
    assert_eq!(v["report"]["holds"], true);
    assert_eq!(v["report"]["chain_lengths"], serde_json::json!([3]));
    assert_eq!(catena(&["tower", "--p", "4", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_writes_out() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = catena(&["verify", "--cap", "8", "--out", p.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(Path::new(&a).exists());
}

#[test]
fn injected_faulty_table_fails_verify() {
    let dir = TempDir::new().unwrap();
    let extra = write(
        &dir,
        "extra.json",
        r#"[{"name":"broken","ring":{"construct":"table","add":[[0,1],[1,0]],"mul":[[0,0],[0,0]],"zero":0,"one":1}}]"#,
    );
    let out = catena(&["verify", "--cap", "4", "--checks", "ring_axioms", "--input", &extra]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["failed"], 1);
}
