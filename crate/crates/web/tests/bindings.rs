use serde_json::Value;
use trihered_web::{cone_json, indecomposables_json, linear_quiver_json, t_structure_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn indecomposables_of_a3() {
    let q = linear_quiver_json(3);
    let v = parse(&indecomposables_json(&q, 101));
    assert_eq!(v["count"], 6);
}

#[test]
fn cone_of_p1_to_s1() {
    let q = linear_quiver_json(2);
    let v = parse(&cone_json(&q, 101, "P1", "S1", &[1]));
    assert_eq!(v["cone"], serde_json::json!(["S2[1]"]));
    assert_eq!(v["exact"], true);
    let v = parse(&cone_json(&q, 101, "P1", "S1", &[]));
    assert!(v["error"].as_str().unwrap().contains("dimension 1"));
}

#[test]
fn heart_of_s1() {
    let q = linear_quiver_json(2);
    let v = parse(&t_structure_json(&q, 101, "S1[0]", -2, 3));
    assert_eq!(v["heart"], serde_json::json!(["S1[0]", "S2[1]", "P1[1]"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["bounded"], true);
}

#[test]
fn bad_input_is_reported() {
    assert!(parse(&indecomposables_json("{", 101))["error"].is_string());
    assert!(parse(&indecomposables_json(&linear_quiver_json(2), 100))["error"].is_string());
    let kronecker = r#"{"vertices": 2, "arrows": [{"label": "a", "from": 1, "to": 2}, {"label": "b", "from": 1, "to": 2}]}"#;
    assert!(parse(&indecomposables_json(kronecker, 101))["error"].is_string());
}
