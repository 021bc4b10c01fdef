use std::path::PathBuf;

use serde_json::Value;
use trihered::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("trihered").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call_json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = call(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn indec_list_a2() {
    let v = call_json(&["indec", "list", "--quiver", &data("a2.json")]);
    assert_eq!(v["count"], 3);
    let mut dims: Vec<Vec<u64>> = v["indecomposables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn cone_of_p1_to_s1_is_s2_shifted() {
    let v = call_json(&["cone", "--quiver", &data("a2.json"), "--morphism", &data("p1_to_s1.json")]);
    assert_eq!(v["cone"], serde_json::json!(["S2[1]"]));
    assert_eq!(v["kind"], "morphism in H");
    assert_eq!(v["exact"], true);
    assert!(v["triangle"]["h"].is_object());
}

#[test]
fn cyclic_quiver_is_rejected() {
    let (code, _, err) = call(&["quiver", "check", &data("cyclic.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("directed cycle detected"), "{err}");
}

#[test]
fn quiver_check_classifies() {
    let v = call_json(&["quiver", "check", &data("a3.json")]);
    assert_eq!(v["dynkin"], serde_json::json!(["A3"]));
    assert_eq!(v["indecomposables"], 6);
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": 2,\n \"arrows\": [}").unwrap();
    let (code, _, err) = call(&["quiver", "check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn bad_prime_and_window_are_usage_errors() {
    assert_eq!(call(&["indec", "list", "--quiver", &data("a2.json"), "--prime", "12"]).0, 2);
    assert_eq!(call(&["blocks", "--quiver", &data("a2.json"), "--window", "3..1"]).0, 2);
    assert_eq!(call(&["verify", "axioms", "--quiver", &data("a2.json"), "--trials", "0"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn non_dynkin_quiver_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kronecker.json");
    std::fs::write(&path, r#"{"vertices": 2, "arrows": [{"label": "a", "from": 1, "to": 2}, {"label": "b", "from": 1, "to": 2}]}"#).unwrap();
    let (code, _, err) = call(&["indec", "list", "--quiver", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn tstructure_heart_and_decomposition() {
    let v = call_json(&[
        "tstructure",
        "--quiver",
        &data("a2.json"),
        "--generator",
        "S1[0]",
        "--window",
        "-2..3",
        "--object",
        &data("s1.json"),
    ]);
    assert_eq!(v["heart"], serde_json::json!(["S1[0]", "S2[1]", "P1[1]"]));
    assert_eq!(v["bounded"], true);
    let parts = v["heart_decomposition"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
}

#[test]
fn walk_becomes_path() {
    let v = call_json(&["walk2path", "--quiver", &data("a2.json"), "--walk", &data("walk.json")]);
    assert_eq!(v["path"], serde_json::json!(["S1[0]", "S2[1]", "P1[1]"]));
    assert_eq!(v["m"], 1);
    assert_eq!(v["valid_path"], true);
}

#[test]
fn octahedron_report_passes() {
    let v = call_json(&["octahedron", "--quiver", &data("a2.json"), "--f", &data("p2_to_p1.json"), "--u", &data("p1_to_s1.json")]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["Z"], serde_json::json!(["S1[0]"]));
}

#[test]
fn decompose_complex_by_cohomology() {
    let v = call_json(&["decompose", "--quiver", &data("a2.json"), "--object", &data("complex.json")]);
    assert_eq!(v["quasi_iso"], true);
    assert_eq!(v["cohomology"][0]["degree"], 1);
    assert_eq!(v["cohomology"][0]["summands"], serde_json::json!(["S1"]));
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    for what in ["axioms", "equivalence"] {
        let args = ["verify", what, "--quiver", &data("a2.json"), "--trials", "4", "--seed", "11", "--json"];
        let (c1, o1, e1) = call(&args);
        let (c2, o2, _) = call(&args);
        assert_eq!(c1, 0, "{e1}");
        assert_eq!(c2, 0);
        assert_eq!(o1, o2);
    }
}
