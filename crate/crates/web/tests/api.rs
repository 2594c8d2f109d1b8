use agraph_web::{analyze_at_json, generate_text, partial_transpose_json, sweep_json};
use serde_json::Value;

const P4: &str = "graph 4 2 2\nedge 0 1 1\nedge 1 2 1\nedge 2 3 1\n";

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_reports_invalid_states_without_failing() {
    let v = json(analyze_at_json(P4, 0.3).unwrap());
    assert_eq!(v["analysis"]["point"]["valid"], false);
    let v = json(analyze_at_json(P4, 0.55).unwrap());
    assert_eq!(v["analysis"]["point"]["valid"], true);
    let ph = v["analysis"]["point"]["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["criterion"] == "peres_horodecki")
        .unwrap()
        .clone();
    assert_eq!(ph["outcome"], "entangled_certified");
}

#[test]
fn errors_are_messages() {
    assert!(analyze_at_json("graph 4 2 2\n", 0.5).unwrap_err().contains("no edges"));
    assert!(analyze_at_json("nonsense", 0.5).is_err());
    assert!(analyze_at_json(P4, 0.0).is_err());
    assert!(sweep_json(P4, 0.5, 0.4, 10).is_err());
}

#[test]
fn sweep_has_every_point() {
    let v = json(sweep_json(P4, 0.01, 1.0, 50).unwrap());
    assert_eq!(v["analysis"]["points"].as_array().unwrap().len(), 50);
    assert_eq!(v["analysis"]["refined"], true);
}

#[test]
fn transpose_edges() {
    let text = "graph 4 2 2\nedge 0 1 1\nedge 0 2 1\nedge 0 3 1\nedge 1 3 1\n";
    let v = json(partial_transpose_json(text).unwrap());
    let pairs: Vec<(u64, u64)> = v["transposed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["u"].as_u64().unwrap(), e["v"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2), (1, 3)]);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn generate_families() {
    assert_eq!(generate_text("path", 4, 2, 2, 0).unwrap(), P4);
    assert!(generate_text("random", 9, 3, 3, 3).unwrap().starts_with("graph 9 3 3\n"));
    assert!(generate_text("wheel", 4, 2, 2, 0).is_err());
}
