//! Browser entry points. Every function takes and returns strings; the
//! result is a JSON object with `ok` and either the answer or `error`.

use flopcalc_core::bundles::{parse_bundle_expr, parse_on};
use flopcalc_core::cohomology::{bbw_cohomology, total_space_cohomology, Dim};
use flopcalc_core::homalg::{check_tilting, ext_table, ExtContext};
use flopcalc_core::repro::graded;
use flopcalc_core::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = Value::Bool(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e.to_string() }).to_string(),
    }
}

/// Cohomology of `expr @space`, as `{summary, dims}`.
#[wasm_bindgen]
pub fn cohomology(expr: &str) -> String {
    respond((|| {
        let e = parse_bundle_expr(expr)?;
        let b = e.bundle().cloned().ok_or_else(|| Error::Unsupported(format!("{e} is not a homogeneous bundle")))?;
        let dims = if b.space.is_total() {
            total_space_cohomology(b.space, &b)?.dims()
        } else {
            let t = bbw_cohomology(&b)?;
            (0..=b.space.dimension()).map(|i| (i, Dim::Finite(t.dim(i)))).collect()
        };
        let shown: serde_json::Map<String, Value> =
            dims.iter().map(|(i, d)| (i.to_string(), json!(d.to_string()))).collect();
        Ok(json!({ "input": e.to_string(), "summary": graded(&dims, &Dim::zero()), "dims": shown }))
    })())
}

/// RHom(source, target); `target` carries the `@space` suffix.
#[wasm_bindgen]
pub fn ext(source: &str, target: &str) -> String {
    respond((|| {
        let b = parse_bundle_expr(target)?;
        let a = parse_on(source, b.space)?.into_object()?;
        let b = b.into_object()?;
        let t = ext_table(&a, &b, &ExtContext::default())?;
        let summary = match t.exact_dims() {
            Some(d) => graded(&d, &Dim::zero()),
            None => t.to_string(),
        };
        Ok(
            json!({ "source": a.to_string(), "target": b.to_string(), "certified": t.is_certified(), "summary": summary }),
        )
    })())
}

/// Tilting check of a direct sum `expr @space`.
#[wasm_bindgen]
pub fn tilting_check(expr: &str) -> String {
    respond((|| {
        let e = parse_bundle_expr(expr)?;
        let cert = check_tilting(&e.summands(), &ExtContext::default())?;
        Ok(json!({ "claim": cert.claim, "verdict": cert.verdict.to_string(), "pass": cert.is_pass() }))
    })())
}
