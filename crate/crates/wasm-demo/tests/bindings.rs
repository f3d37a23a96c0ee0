use cantor_approx_wasm::{approximate_and_verify, dynamics_graph, spectrum};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn dynamics_graph_of_the_odometer() {
    let v = parse(dynamics_graph("odometer", 2).unwrap());
    assert_eq!(v["vertices"], 4);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
}

#[test]
fn spectrum_of_two_cycles() {
    let v = parse(spectrum("cycles35", 12).unwrap());
    assert_eq!(v["present"], serde_json::json!([3, 5, 6, 8, 9, 10, 11, 12]));
}

#[test]
fn flagship_run_verifies() {
    let v = parse(approximate_and_verify("full2", "odometer", 2).unwrap());
    assert_eq!(v["ok"], true);
    let v = parse(approximate_and_verify("full2", "bitflip", 2).unwrap());
    assert_eq!(v["ok"], false);
    assert_eq!(v["exit_code"], 2);
}
