use hamproof_web::{encode_json, oracle_json, pipeline_json};

fn parse(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn oracle_agrees_on_small_graphs() {
    let v = parse(&oracle_json("3 2\n1 2\n2 3\n").unwrap());
    assert_eq!(v["hamiltonian"], true);
    assert_eq!(v["sat_alpha"], true);
    let v = parse(&oracle_json("2 0\n").unwrap());
    assert_eq!(v["hamiltonian"], false);
    assert!(oracle_json("2 1\n1 1\n").unwrap_err().contains("self-loop"));
}

#[test]
fn encode_counts_conjuncts() {
    let v = parse(&encode_json("3 0\n").unwrap());
    // A, B, C, D, E for n = 3 with all 6 edges missing
    assert_eq!(v["conjuncts"], serde_json::json!([3, 18, 3, 18, 12]));
    assert!(v["alpha"].as_str().unwrap().starts_with('('));
}

#[test]
fn pipeline_reports_all_stages() {
    let v = parse(&pipeline_json("2 0\n", "default").unwrap());
    assert_eq!(v["leaf_count"], 4);
    assert_eq!(v["faithful"], true);
    assert!(v["implicational"]["rho_weight"].as_u64().unwrap() > 0);
    assert!(v["dag"]["weight"].as_u64().unwrap() <= v["implicational"]["weight"].as_u64().unwrap());
    assert_eq!(v["verified"].as_bool().unwrap(), v["verdict"].is_null());
}

#[test]
fn pipeline_rejects_bad_requests() {
    assert!(pipeline_json("3 2\n1 2\n2 3\n", "faithful").unwrap_err().contains("Hamiltonian"));
    assert!(pipeline_json("2 0\n", "lazy").unwrap_err().contains("mode"));
    assert!(pipeline_json("6 0\n", "pruned").unwrap_err().contains("n <= 5"));
}
