//! Browser bindings for the demo page in `www/`.
//!
//! Each operation has a plain Rust form returning JSON text, so it can be
//! tested natively, and a thin `#[wasm_bindgen]` wrapper.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use msign::algebra::transport_check;
use msign::catalog::{free_presentation, universal_presentation};
use msign::realize::{decision_table, RealizationModel};
use msign::{Bidegree, CoefMode, Convention, EpsImage, Grid, Presentation, ProductExpr};

/// Largest grid radius the page may ask for.
pub const MAX_RADIUS: i64 = 12;

fn convention(spec: &str, eps: &str) -> Result<Convention, String> {
    let conv: Convention = spec.parse().map_err(|e: msign::Error| e.to_string())?;
    let eps: EpsImage = eps.parse().map_err(|e: msign::Error| e.to_string())?;
    Ok(conv.with_mode(CoefMode::new(eps, 0)))
}

fn presentation(name: &str) -> Result<Presentation, String> {
    match name {
        "catalog" => Ok(universal_presentation(false)),
        "catalog-tau" => Ok(universal_presentation(true)),
        "free" => Ok(free_presentation(false)),
        "free-tau" => Ok(free_presentation(true)),
        other => Err(format!("unknown presentation {other}")),
    }
}

fn radius(r: i64) -> Result<Grid, String> {
    if (0..=MAX_RADIUS).contains(&r) {
        Ok(Grid::symmetric(r))
    } else {
        Err(format!("radius must lie in 0..={MAX_RADIUS}"))
    }
}

#[derive(Serialize)]
struct CommuteGrid {
    convention: String,
    a: Bidegree,
    /// Stems, left to right.
    stems: Vec<i64>,
    /// One row per weight, top weight first.
    rows: Vec<CommuteRow>,
}

#[derive(Serialize)]
struct CommuteRow {
    weight: i64,
    units: Vec<String>,
}

/// `w(a, b)` for `b` over a square of bidegrees.
pub fn commute_grid_json(convention_spec: &str, eps: &str, deg_a: &str, r: i64) -> Result<String, String> {
    let conv = convention(convention_spec, eps)?;
    let a: Bidegree = deg_a.parse().map_err(|e: msign::Error| e.to_string())?;
    let grid = radius(r)?;
    let rows = (grid.lo..=grid.hi)
        .rev()
        .map(|q| CommuteRow {
            weight: q,
            units: (grid.lo..=grid.hi)
                .map(|p| conv.commutation_unit(a, Bidegree::new(p, q)).to_string())
                .collect(),
        })
        .collect();
    let out = CommuteGrid {
        convention: conv.to_string(),
        a,
        stems: (grid.lo..=grid.hi).collect(),
        rows,
    };
    Ok(serde_json::to_string(&out).unwrap())
}

/// The ring-map decision for every preset convention and built-in model.
pub fn realize_table_json(r: i64) -> Result<String, String> {
    let rows = decision_table(&Convention::presets(), &RealizationModel::builtins(), radius(r)?);
    let rows: Vec<_> = rows
        .iter()
        .map(|row| json!({"convention": row.convention, "model": row.model, "text": row.decision.to_string(),
                          "decision": row.decision}))
        .collect();
    Ok(serde_json::to_string(&rows).unwrap())
}

/// Normal forms of `expr` under two conventions and whether they agree.
pub fn transport_json(pres: &str, from: &str, to: &str, eps: &str, expr: &str) -> Result<String, String> {
    let pres = presentation(pres)?;
    let (a, b) = (convention(from, eps)?, convention(to, eps)?);
    let e: ProductExpr = expr.parse().map_err(|e: msign::Error| e.to_string())?;
    let report = transport_check(&e, &a, &b, &pres).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&report).unwrap())
}

#[wasm_bindgen(js_name = commuteGrid)]
pub fn commute_grid(convention: &str, eps: &str, deg_a: &str, radius: i32) -> Result<String, JsError> {
    commute_grid_json(convention, eps, deg_a, radius.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = realizeTable)]
pub fn realize_table(radius: i32) -> Result<String, JsError> {
    realize_table_json(radius.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transport(pres: &str, from: &str, to: &str, eps: &str, expr: &str) -> Result<String, JsError> {
    transport_json(pres, from, to, eps, expr).map_err(|e| JsError::new(&e))
}
