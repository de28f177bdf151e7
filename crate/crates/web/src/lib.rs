//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Documents cross the boundary as JSON strings, in the same layouts the CLI
//! reads and writes.

use serde_json::Value;
use wasm_bindgen::prelude::*;

use tint_core::dynamics::{run, RuleConfig, Trace, WeightTable};
use tint_core::ingest::{knn_graph, load_embeddings, parse_graph, parse_vocabulary, write_graph};
use tint_core::miner::IntReport;

/// The bundled Tsuchi graph document.
pub fn fixture_graph() -> String {
    write_graph(&tint_core::fixture::tsuchi_doc())
}

/// Default rule configuration with the keys of `overrides` (a JSON object) applied.
pub fn config_from(overrides: &str) -> Result<RuleConfig, String> {
    let mut base = serde_json::to_value(RuleConfig::default()).map_err(|e| e.to_string())?;
    if !overrides.trim().is_empty() {
        let patch: Value = serde_json::from_str(overrides).map_err(|e| e.to_string())?;
        let Value::Object(patch) = patch else {
            return Err("configuration must be a JSON object".into());
        };
        base.as_object_mut()
            .expect("config is an object")
            .extend(patch);
    }
    serde_json::from_value(base).map_err(|e| e.to_string())
}

pub fn simulate_json(
    graph: &str,
    target: &str,
    source: &str,
    config: &str,
) -> Result<String, String> {
    let c = parse_graph(graph)
        .map_err(|e| e.to_string())?
        .to_category()
        .map_err(|e| e.to_string())?;
    let cfg = config_from(config)?;
    let (a, b) = (
        c.id(target).map_err(|e| e.to_string())?,
        c.id(source).map_err(|e| e.to_string())?,
    );
    let trace = run(&c, &WeightTable::from_category(&c), a, b, cfg).map_err(|e| e.to_string())?;
    Ok(trace.to_json())
}

pub fn mine_json(trace: &str, step: usize, cap: usize) -> Result<String, String> {
    let trace = Trace::from_json(trace)?;
    let report = IntReport::from_trace(&trace, step, cap.max(1)).map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

pub fn knn_json(vectors: &str, vocab: &str, k: usize, floor: f64) -> Result<String, String> {
    let table = load_embeddings(vectors).map_err(|e| format!("vectors: {e}"))?;
    let vocab = parse_vocabulary(vocab).map_err(|e| format!("vocabulary: {e}"))?;
    let doc = knn_graph(&table, &vocab, k, floor).map_err(|e| e.to_string())?;
    Ok(write_graph(&doc))
}

#[wasm_bindgen]
pub fn fixture() -> String {
    fixture_graph()
}

/// Runs the dynamics; returns the trace document.
#[wasm_bindgen]
pub fn simulate(graph: &str, target: &str, source: &str, config: &str) -> Result<String, JsError> {
    simulate_json(graph, target, source, config).map_err(|e| JsError::new(&e))
}

/// Mines snapshot `step` of a trace; returns the report document.
#[wasm_bindgen]
pub fn mine(trace: &str, step: usize, cap: usize) -> Result<String, JsError> {
    mine_json(trace, step, cap).map_err(|e| JsError::new(&e))
}

/// Builds an association graph from word vectors; returns the graph document.
#[wasm_bindgen]
pub fn knn(vectors: &str, vocab: &str, k: usize, floor: f64) -> Result<String, JsError> {
    knn_json(vectors, vocab, k, floor).map_err(|e| JsError::new(&e))
}
