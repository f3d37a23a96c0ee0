//! Browser bindings: the dynamics graph of a built-in system, the period
//! spectrum of a built-in graph, and a full approximation run with replay.

use cantor_approx::cantor::{depth_partition, DyadicValue};
use cantor_approx::dynamics::dynamics_graph_auto;
use cantor_approx::pipeline::{approximate, load_system, named_graph, verify, PipelineConfig};
use cantor_approx::symbolic::{mixing_certificate, period_spectrum};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Depths past this make the page unresponsive.
const DEMO_MAX_DEPTH: usize = 8;

fn js(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// `G(f, P)` for the depth-`depth` partition, as DOT, JSON and a mixing
/// certificate.
#[wasm_bindgen]
pub fn dynamics_graph(system: &str, depth: usize) -> Result<String, JsError> {
    if depth == 0 || depth > DEMO_MAX_DEPTH {
        return Err(js(format!("depth must lie in 1..={DEMO_MAX_DEPTH}")));
    }
    let f = load_system(system, 16).map_err(js)?;
    let p = depth_partition(depth).map_err(js)?;
    let g = dynamics_graph_auto(&f, &p).map_err(js)?;
    let out = json!({
        "dot": g.to_dot(&format!("G_{system}")),
        "vertices": g.graph.vertex_count(),
        "edges": g.graph.edge_count(),
        "mixing": mixing_certificate(&g.graph),
    });
    Ok(out.to_string())
}

/// Periods up to `bound` of a built-in graph's shift.
#[wasm_bindgen]
pub fn spectrum(graph: &str, bound: usize) -> Result<String, JsError> {
    let g = named_graph(graph).ok_or_else(|| js(format!("unknown graph {graph:?}")))?;
    serde_json::to_string(&period_spectrum(&g, bound.clamp(1, 64))).map_err(js)
}

/// Runs the construction for `epsilon = 2^-k` and replays every certificate.
#[wasm_bindgen]
pub fn approximate_and_verify(f: &str, g: &str, k: u32) -> Result<String, JsError> {
    let cfg = PipelineConfig::new(DyadicValue::pow(k.clamp(1, 3)));
    let f = load_system(f, cfg.max_depth).map_err(js)?;
    let g = load_system(g, cfg.max_depth).map_err(js)?;
    let r = match approximate(&f, &g, &cfg) {
        Ok(r) => r,
        Err(e) => {
            return Ok(json!({ "ok": false, "error": e.to_string(), "exit_code": e.exit_code() }).to_string())
        }
    };
    let report = verify(&r);
    let out = json!({
        "ok": report.passed,
        "epsilon": cfg.epsilon.to_string(),
        "upper": r.upper.to_string(),
        "partition_depth": r.partition_depth,
        "spacing": r.code.tables.big_n,
        "marker_radius": r.code.markers.radius,
        "code_radius": r.code.window_radius,
        "mbar": r.mbar,
        "checks": report.checks,
        "h_graph": r.certificate.g_graph.to_dot("G_h"),
    });
    Ok(out.to_string())
}
