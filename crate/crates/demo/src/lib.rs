//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and are what the native tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use symtc_core::bpm2_ring::{tcs_lower_bound_f2, zeta_height_in, QuotientRing};
use symtc_core::so3_planner::{plan, Rotation, Strategy};

/// Keeps page interactions well under a second.
pub const MAX_M: usize = 10;
pub const MAX_SAMPLES: usize = 512;

fn check_m(m: usize) -> Result<(), String> {
    if m == 0 || m > MAX_M {
        return Err(format!("m must be between 1 and {MAX_M}"));
    }
    Ok(())
}

pub fn ring_summary_json(m: usize) -> Result<Value, String> {
    check_m(m)?;
    let ring = QuotientRing::full(m).map_err(|e| e.to_string())?;
    let height = zeta_height_in(&ring).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = ring.dims().into_iter().take(2 * m).collect();
    let degrees: Vec<Value> = (0..2 * m)
        .map(|d| {
            let basis: Vec<String> = ring.basis(d).unwrap_or_default().iter().map(ToString::to_string).collect();
            json!({ "degree": d, "dim": basis.len(), "basis": basis })
        })
        .collect();
    Ok(json!({
        "m": m,
        "total_dim": dims.iter().sum::<usize>(),
        "dims": dims,
        "zeta_height": height,
        "tcs_lower_bound": height + 1,
        "degrees": degrees,
    }))
}

pub fn bounds_table_json(lo: usize, hi: usize) -> Result<Value, String> {
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    check_m(lo)?;
    check_m(hi)?;
    let rows = (lo..=hi)
        .map(|m| tcs_lower_bound_f2(m).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({ "rows": rows }))
}

pub fn plan_path_json(from: &[f64], to: &[f64], strategy: &str, samples: usize) -> Result<Value, String> {
    let quat = |v: &[f64]| -> Result<Rotation, String> {
        let q: [f64; 4] = v.try_into().map_err(|_| format!("expected 4 components, got {}", v.len()))?;
        Rotation::new(q).map_err(|e| e.to_string())
    };
    let strategy: Strategy = strategy.parse().map_err(|e| format!("{e}"))?;
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must be between 2 and {MAX_SAMPLES}"));
    }
    let (a, b) = (quat(from)?, quat(to)?);
    let path = plan(&a, &b, strategy).map_err(|e| e.to_string())?;
    Ok(json!({
        "endpoint_residual": path.endpoint_error(),
        "path": path.export(samples),
    }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsError> {
    result.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// Dimensions, basis and zeta-height of `H*(B(P^m,2); F2)`.
#[wasm_bindgen]
pub fn ring_summary(m: usize) -> Result<String, JsError> {
    to_js(ring_summary_json(m))
}

/// F2 lower bounds for `TC^S(P^m)`, `lo <= m <= hi`.
#[wasm_bindgen]
pub fn bounds_table(lo: usize, hi: usize) -> Result<String, JsError> {
    to_js(bounds_table_json(lo, hi))
}

/// A symmetric path between two rotations given as `[w, x, y, z]`.
#[wasm_bindgen]
pub fn plan_path(from: &[f64], to: &[f64], strategy: &str, samples: usize) -> Result<String, JsError> {
    to_js(plan_path_json(from, to, strategy, samples))
}

#[wasm_bindgen]
pub fn version() -> String {
    symtc_core::VERSION.to_string()
}
