//! Browser bindings. Each export takes graph text in any of the three
//! formats and returns a JSON string; errors come back as thrown strings.

use serde_json::json;
use wasm_bindgen::prelude::*;

use cograph_retract::format::GraphFormat;
use cograph_retract::reduction::{encode, ThreePartitionInstance};
use cograph_retract::{build_cotree, classify, retract, verify_retract_certificate, Graph, Verdict};

fn parse(text: &str) -> Result<Graph, String> {
    GraphFormat::sniff(text).parse(text).map_err(|e| e.to_string())
}

fn edges(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().map(|(u, v)| [u, v]).collect()
}

pub fn classify_text(g: &str) -> Result<String, String> {
    let g = parse(g)?;
    let class = classify(&g).map_err(|e| e.to_string())?;
    let cotree = build_cotree(&g).ok();
    Ok(json!({
        "class": class,
        "n": g.vertex_count(),
        "edges": edges(&g),
        "omega": cotree.as_ref().map(|t| t.clique_number()),
        "cotree": cotree.map(|t| t.to_string()),
    })
    .to_string())
}

pub fn retract_text(g: &str, h: &str) -> Result<String, String> {
    let (g, h) = (parse(g)?, parse(h)?);
    let (route, verdict) = retract(&g, &h).map_err(|e| e.to_string())?;
    let (certificate, reason) = match verdict {
        Verdict::Yes(c) => {
            if !verify_retract_certificate(&g, &h, &c) {
                return Err("internal error: certificate failed verification".into());
            }
            (Some(c), None)
        }
        Verdict::No(r) => (None, Some(r)),
    };
    Ok(json!({
        "verdict": if certificate.is_some() { "yes" } else { "no" },
        "route": route.as_str(),
        "certificate": certificate,
        "reason": reason,
        "g": { "n": g.vertex_count(), "edges": edges(&g) },
        "h": { "n": h.vertex_count(), "edges": edges(&h) },
    })
    .to_string())
}

/// Instance text is `m B` on the first line and the items on the second.
pub fn reduce3p_text(instance: &str) -> Result<String, String> {
    let inst: ThreePartitionInstance = instance.parse().map_err(|e: cograph_retract::Error| e.to_string())?;
    let enc = encode(&inst).map_err(|e| e.to_string())?;
    Ok(json!({
        "g": enc.g.to_string(),
        "h": enc.h.to_string(),
        "n_g": enc.g.vertex_count(),
        "n_h": enc.h.vertex_count(),
        "triples": enc.triples,
        "degenerate": enc.degenerate,
    })
    .to_string())
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_js(g: &str) -> Result<String, JsValue> {
    classify_text(g).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = retract)]
pub fn retract_js(g: &str, h: &str) -> Result<String, JsValue> {
    retract_text(g, h).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = reduce3p)]
pub fn reduce3p_js(instance: &str) -> Result<String, JsValue> {
    reduce3p_text(instance).map_err(JsValue::from)
}
