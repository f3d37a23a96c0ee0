use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantor-approx"))
        .args(args)
        .output()
        .unwrap()
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn graph_emits_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let v = json_stdout(&cli(&["graph", "--system", "f=full2", "--depth", "2", "--dot", path(&dot)]));
    assert_eq!(v["schema"], "cantor-approx/1");
    assert_eq!(v["command"], "graph");
    assert_eq!(v["result"]["graph"]["vertices"].as_array().unwrap().len(), 4);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("\"00\" -> \"00\""));
}

#[test]
fn mixing_and_spectrum_of_named_graphs() {
    let v = json_stdout(&cli(&["mixing", "--graph", "golden-mean"]));
    assert_eq!(v["result"]["certificate"]["exponent"], 2);
    let v = json_stdout(&cli(&["mixing", "--graph", "c2"]));
    assert_eq!(v["result"]["certificate"]["primitive"], false);
    let v = json_stdout(&cli(&["spectrum", "--graph", "cycles35", "--mbar", "12"]));
    let got: Vec<u64> = v["result"]["present"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(got, vec![3, 5, 6, 8, 9, 10, 11, 12]);
}

#[test]
fn mixing_of_a_dynamics_graph() {
    let v = json_stdout(&cli(&["mixing", "--system", "f=full2", "--epsilon", "2^-2"]));
    assert_eq!(v["result"]["certificate"]["primitive"], true);
}

#[test]
fn percon_violation_exits_two() {
    let out = cli(&["percon", "--system", "f=cycles35", "g=odometer-swap", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["violations"], serde_json::json!([2]));
}

#[test]
fn percon_holds_for_the_odometer() {
    let v = json_stdout(&cli(&["percon", "--system", "f=cycles35", "g=odometer", "--depth", "3"]));
    assert_eq!(v["result"]["holds_up_to_bound"], true);
}

#[test]
fn markers_on_the_golden_mean() {
    let v = json_stdout(&cli(&[
        "markers", "--graph", "golden-mean", "--len", "31", "--n", "3", "--k", "7", "--radius", "7",
    ]));
    assert_eq!(v["result"]["check"]["disjoint"], true);
    assert_eq!(v["result"]["check"]["covering"], true);
}

#[test]
fn markers_on_an_itinerary() {
    let v = json_stdout(&cli(&["markers", "--system", "g=odometer", "--depth", "2", "--n", "3"]));
    assert_eq!(v["result"]["markers"]["radius"], 1);
    assert_eq!(v["result"]["markers"]["words"].as_array().unwrap().len(), 1);
}

#[test]
fn code_on_an_itinerary() {
    let v = json_stdout(&cli(&["code", "--system", "g=odometer", "--depth", "3", "--target", "full2"]));
    assert_eq!(v["result"]["check"]["commutes"], true);
    assert_eq!(v["result"]["check"]["image_in_language"], true);
}

#[test]
fn approximate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let checks = dir.path().join("v.json");
    let out = cli(&[
        "approximate", "--system", "f=full2", "g=odometer", "--epsilon", "2^-2", "--out", path(&report),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("< 2^-2"));
    let out = cli(&["verify", path(&report), "--out", path(&checks)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&checks).unwrap()).unwrap();
    assert_eq!(v["schema"], "cantor-approx/1");
    assert_eq!(v["passed"], true);

    // drop one edge of the stored f-graph
    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let edges = r["certificate"]["f_graph"]["graph"]["edges"].as_array_mut().unwrap();
    edges.remove(0);
    std::fs::write(&report, serde_json::to_string(&r).unwrap()).unwrap();
    let out = cli(&["verify", path(&report)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("subgraph"));
}

#[test]
fn bitflip_exits_two() {
    let out = cli(&["approximate", "--system", "f=full2", "g=bitflip", "--epsilon", "2^-2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g^2 = identity verified at depth 16"));
}

#[test]
fn shallow_ladder_exhausts_precision() {
    let out = cli(&["graph", "--system", "f=golden-mean", "--depth", "6", "--max-depth", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cli(&["approximate", "--system", "f=full2", "g=odometer"]).status.code(), Some(1));
    assert_eq!(cli(&["graph", "--system", "f=nope"]).status.code(), Some(1));
    assert_eq!(cli(&["bogus"]).status.code(), Some(1));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
}
