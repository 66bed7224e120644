//! Browser bindings: graph oracles, the encoding, and the full proof
//! pipeline with its size measures. Everything crosses the boundary as
//! graph text in and JSON text out.

use serde_json::json;
use wasm_bindgen::prelude::*;

use hamproof::builder::Mode;
use hamproof::encoding::{encode_alpha, sat_alpha, Part};
use hamproof::graph::{is_hamiltonian, parse_graph, Graph};
use hamproof::pipeline::run;

/// Largest graph the page will build proofs for; n = 6 takes seconds natively.
pub const MAX_PIPELINE_N: usize = 5;

fn graph(text: &str) -> Result<Graph, String> {
    parse_graph(text).map_err(|e| e.to_string())
}

pub fn oracle_json(text: &str) -> Result<String, String> {
    let g = graph(text)?;
    let witness = is_hamiltonian(&g);
    let sat = sat_alpha(&g).map_err(|e| e.to_string())?;
    Ok(json!({
        "hamiltonian": witness.is_some(),
        "witness": witness.map(|w| w.0),
        "sat_alpha": sat,
    })
    .to_string())
}

pub fn encode_json(text: &str) -> Result<String, String> {
    let parts = encode_alpha(&graph(text)?);
    let conjuncts: Vec<usize> = Part::ALL.iter().map(|&p| parts.conjunct_count(p)).collect();
    Ok(json!({
        "alpha": parts.alpha().to_string(),
        "weight": parts.alpha().weight(),
        "conjuncts": conjuncts,
    })
    .to_string())
}

pub fn pipeline_json(text: &str, mode: &str) -> Result<String, String> {
    let g = graph(text)?;
    if g.n() > MAX_PIPELINE_N {
        return Err(format!("the page builds proofs for n <= {MAX_PIPELINE_N}"));
    }
    let mode = match mode {
        "faithful" => Mode::Faithful,
        "pruned" => Mode::Pruned,
        "" | "default" => Mode::default_for(g.n()),
        m => return Err(format!("unknown mode {m:?}")),
    };
    let r = run(&g, mode).map_err(|e| e.to_string())?;
    let dag = r.dag_report();
    Ok(json!({
        "leaf_count": r.refutation.leaf_count,
        "faithful": mode == Mode::Faithful,
        "tree": {
            "height": r.tree_metrics.height,
            "weight": r.tree_metrics.weight,
            "distinct_weight": r.tree_metrics.distinct_formula_weight,
            "nodes": r.tree_metrics.node_count,
        },
        "implicational": {
            "rho_weight": r.translated.rho.weight(),
            "axioms_used": r.translated.axioms.len(),
            "height": r.translated_metrics.height,
            "weight": r.translated_metrics.weight,
            "nodes": r.translated_metrics.node_count,
        },
        "dag": dag.map(|d| json!({
            "weight": d.weight,
            "height": d.height,
            "nodes": d.node_count,
            "compression_ratio": d.compression_ratio,
        })),
        "verified": r.verified(),
        "verdict": r.verdict.as_ref().err().map(ToString::to_string),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn oracle(text: &str) -> Result<String, JsValue> {
    oracle_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn encode(text: &str) -> Result<String, JsValue> {
    encode_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn pipeline(text: &str, mode: &str) -> Result<String, JsValue> {
    pipeline_json(text, mode).map_err(|e| JsValue::from_str(&e))
}
