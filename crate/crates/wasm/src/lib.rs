//! Browser bindings for a small demo page: code parameters and distance,
//! the hypergraph-product to GB map, and an SVG of the locality embedding.
//!
//! Every operation is a plain function returning JSON or SVG text, with a
//! thin `wasm_bindgen` wrapper on top.

use serde_json::json;
use wasm_bindgen::prelude::*;

use gbtk::codes::CodeSpec;
use gbtk::distance::{estimate_distance, exact_distance_with, EstimatorConfig, ExactOptions};
use gbtk::field::Field;
use gbtk::maps::{build_qhp, embed_code, qhp_to_gb};
use gbtk::poly::Poly;
use gbtk::text::parse_terms;

/// Exact enumeration budget in the browser.
pub const BROWSER_BUDGET: u128 = 1 << 26;

/// Largest trial count accepted from the page.
pub const MAX_BROWSER_TRIALS: u64 = 100_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Parameters and distance of a code spec. `trials = 0` asks for exact
/// enumeration.
pub fn analyze(spec: &str, trials: u64, seed: u64) -> Result<String, String> {
    let spec = CodeSpec::from_json(spec).map_err(err)?;
    let code = spec.build().map_err(err)?;
    if trials > MAX_BROWSER_TRIALS {
        return Err(format!("at most {MAX_BROWSER_TRIALS} trials in the browser"));
    }
    let r = if trials == 0 {
        let opts = ExactOptions {
            budget: BROWSER_BUDGET,
            stop_at: None,
        };
        exact_distance_with(&code, &opts).map_err(err)?
    } else {
        estimate_distance(&code, &EstimatorConfig::new(trials, seed).map_err(err)?).map_err(err)?
    };
    let witness = r.witness_polys().map(|(u, v)| json!({"u": u.to_string(), "v": v.to_string()}));
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "h": code.h().to_string(),
        "g": code.g().to_string(),
        "d": r.d,
        "exact": r.exact,
        "trials": r.trials_used,
        "seed": r.seed,
        "witness": witness,
    })
    .to_string())
}

/// GB form of the hypergraph-product code of `h1` (size `n1`) and `h2`
/// (size `n2`) over F_q.
pub fn qhp_map(q: u32, h1: &str, n1: usize, h2: &str, n2: usize) -> Result<String, String> {
    let field = Field::new(q).map_err(err)?;
    let p1 = Poly::from_terms(field, &parse_terms(h1).map_err(err)?);
    let p2 = Poly::from_terms(field, &parse_terms(h2).map_err(err)?);
    let qhp = build_qhp(q, &p1, n1, &p2, n2).map_err(err)?;
    let gb = qhp_to_gb(&qhp).map_err(err)?;
    Ok(json!({
        "n": qhp.n(),
        "k": qhp.k(),
        "predicted_d": qhp.predicted_d(),
        "a": gb.a().to_string(),
        "b": gb.b().to_string(),
        "spec": gb.spec(),
    })
    .to_string())
}

/// SVG drawing of the locality embedding of a code.
pub fn embedding_svg(spec: &str, prime_reduce: bool) -> Result<String, String> {
    let code = CodeSpec::from_json(spec).and_then(|s| s.build()).map_err(err)?;
    let e = embed_code(&code, prime_reduce).map_err(err)?;
    Ok(e.union.to_svg())
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(spec: &str, trials: u32, seed: u32) -> Result<String, JsValue> {
    analyze(spec, trials as u64, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = qhpMap)]
pub fn qhp_map_js(q: u32, h1: &str, n1: u32, h2: &str, n2: u32) -> Result<String, JsValue> {
    qhp_map(q, h1, n1 as usize, h2, n2 as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = embeddingSvg)]
pub fn embedding_svg_js(spec: &str, prime_reduce: bool) -> Result<String, JsValue> {
    embedding_svg(spec, prime_reduce).map_err(|e| JsValue::from_str(&e))
}
