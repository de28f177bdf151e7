use serde_json::Value;
use tint_web::{config_from, fixture_graph, knn_json, mine_json, simulate_json};

fn tsuchi_trace() -> String {
    simulate_json(
        &fixture_graph(),
        "Wing",
        "Sail",
        r#"{"deterministic": true}"#,
    )
    .unwrap()
}

#[test]
fn overrides_apply_on_top_of_defaults() {
    let cfg = config_from(r#"{"max_steps": 3, "seed": 9}"#).unwrap();
    assert_eq!((cfg.max_steps, cfg.seed, cfg.fork_depth), (3, 9, 2));
    assert!(config_from(r#"{"max_step": 3}"#).is_err());
    assert!(config_from("[1]").is_err());
    assert_eq!(config_from("").unwrap(), Default::default());
}

#[test]
fn simulate_then_mine() {
    let trace = tsuchi_trace();
    let parsed: Value = serde_json::from_str(&trace).unwrap();
    assert_eq!(parsed["snapshots"].as_array().unwrap().len(), 21);
    let report: Value = serde_json::from_str(&mine_json(&trace, 20, 32).unwrap()).unwrap();
    let top = &report["entries"][0];
    assert_eq!(top["comprehensiveness"], 2);
}

#[test]
fn errors_are_messages() {
    assert!(simulate_json(&fixture_graph(), "Wing", "Boat", "")
        .unwrap_err()
        .contains("Boat"));
    assert!(mine_json(&tsuchi_trace(), 21, 32).is_err());
    assert!(knn_json("2 1\na 1\nb 1\n", "a\nb\n", 2, 0.0).is_err());
}

#[test]
fn knn_builds_graph() {
    let g: Value = serde_json::from_str(
        &knn_json("3 2\na 1 0\nb 1 0.1\nc 0 1\n", "a\nb\nc\n", 1, 0.0).unwrap(),
    )
    .unwrap();
    assert_eq!(g["objects"].as_array().unwrap().len(), 3);
    assert_eq!(g["generators"][0]["dom"], "a");
    assert_eq!(g["generators"][0]["cod"], "b");
}
