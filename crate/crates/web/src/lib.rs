//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function returning
//! `Result<String, String>`, so the logic runs in native tests too.

use agraph::criteria::SweepOptions;
use agraph::family::{FamilyKind, GraphFamily};
use agraph::report::{AnalysisReport, EdgeRecord, GridSpec};
use agraph::spectral::DEFAULT_PSD_TOL;
use agraph::{format, Graph};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn parse(text: &str) -> Result<Graph, String> {
    format::parse_graph(text).map_err(|e| e.to_string())
}

/// Full report at one alpha, as JSON. Works for invalid states too; the
/// point's `valid` flag says whether `rho` is PSD.
pub fn analyze_at_json(graph_text: &str, alpha: f64) -> Result<String, String> {
    let g = parse(graph_text)?;
    let r = AnalysisReport::point(&g, "graph", alpha, DEFAULT_PSD_TOL).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

/// Sweep report over `count` alphas from `start` to `end`, refined runs.
pub fn sweep_json(graph_text: &str, start: f64, end: f64, count: usize) -> Result<String, String> {
    let g = parse(graph_text)?;
    let grid = GridSpec { start, end, count };
    let opts = SweepOptions {
        refine: true,
        ..Default::default()
    };
    let r = AnalysisReport::sweep(&g, "graph", grid, opts).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Transposed {
    d1: usize,
    d2: usize,
    edges: Vec<EdgeRecord>,
    transposed: Vec<EdgeRecord>,
}

fn records(g: &Graph) -> Vec<EdgeRecord> {
    g.edges().map(|e| EdgeRecord { u: e.u, v: e.v, w: e.w }).collect()
}

/// Edge lists of the graph and of its partial transpose.
pub fn partial_transpose_json(graph_text: &str) -> Result<String, String> {
    let g = parse(graph_text)?;
    let pt = g.partial_transpose().map_err(|e| e.to_string())?;
    let out = Transposed {
        d1: g.d1(),
        d2: g.d2(),
        edges: records(&g),
        transposed: records(&pt),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

pub fn generate_text(family: &str, n: usize, d1: usize, d2: usize, seed: u64) -> Result<String, String> {
    let kind: FamilyKind = family.parse().map_err(|e: agraph::family::FamilyError| e.to_string())?;
    let g = GraphFamily {
        seed,
        ..GraphFamily::new(kind, n)
    }
    .generate(d1, d2)
    .map_err(|e| e.to_string())?;
    Ok(format::to_text(&g))
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze_at(graph_text: &str, alpha: f64) -> Result<String, JsValue> {
    js(analyze_at_json(graph_text, alpha))
}

#[wasm_bindgen]
pub fn sweep(graph_text: &str, start: f64, end: f64, count: usize) -> Result<String, JsValue> {
    js(sweep_json(graph_text, start, end, count))
}

#[wasm_bindgen]
pub fn partial_transpose(graph_text: &str) -> Result<String, JsValue> {
    js(partial_transpose_json(graph_text))
}

#[wasm_bindgen]
pub fn generate(family: &str, n: usize, d1: usize, d2: usize, seed: u32) -> Result<String, JsValue> {
    js(generate_text(family, n, d1, d2, seed as u64))
}
