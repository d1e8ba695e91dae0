//! Browser bindings for three operations: the prime factorization of `Ḡ_n`,
//! the series `ord_p(Ḡ_n)`, and the periodic digit-sum function `f_b`.
//!
//! The plain functions return `Result<_, String>` so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use gbar::delange::delange_grid;
use gbar::exact::ExactCap;
use gbar::orders::ord_gbar;
use gbar::primestats::{factorization_identity, is_prime};
use gbar::radix::Base;
use wasm_bindgen::prelude::*;

/// Exact products get slow in the browser well before the native cap.
pub const WEB_EXACT_CAP: u64 = 400;

/// Largest `n` accepted by the series plot.
pub const WEB_SERIES_MAX: u64 = 1 << 16;

pub const WEB_GRID_MAX: usize = 1 << 14;

pub fn factorization(n: u64) -> Result<String, String> {
    factorization_identity(n, ExactCap(WEB_EXACT_CAP))
        .map(|r| r.display())
        .map_err(|e| e.to_string())
}

/// `ord_p(Ḡ_n)` for `n = 1..=max`; with `scaled`, divided by
/// `(1/2) n log_p n` (and 0 at `n = 1`).
pub fn order_series(p: u64, max: u64, scaled: bool) -> Result<Vec<f64>, String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    if max > WEB_SERIES_MAX {
        return Err(format!("max is limited to {WEB_SERIES_MAX}"));
    }
    let base = Base::new(p).map_err(|e| e.to_string())?;
    let lp = (p as f64).ln();
    (1..=max)
        .map(|n| {
            let ord = ord_gbar(n, base).map_err(|e| e.to_string())? as f64;
            Ok(match (scaled, n) {
                (false, _) => ord,
                (true, 1) => 0.0,
                (true, _) => ord / (0.5 * n as f64 * (n as f64).ln() / lp),
            })
        })
        .collect()
}

/// `[x0, f0, x1, f1, ...]` on a `grid`-point mesh of `[0, 1)`.
pub fn delange_curve(b: u64, grid: usize) -> Result<Vec<f64>, String> {
    if grid > WEB_GRID_MAX {
        return Err(format!("grid is limited to {WEB_GRID_MAX}"));
    }
    let base = Base::new(b).map_err(|e| e.to_string())?;
    let points = delange_grid(base, grid).map_err(|e| e.to_string())?;
    Ok(points.into_iter().flat_map(|(x, f)| [x, f]).collect())
}

#[wasm_bindgen(js_name = factorGbar)]
pub fn factor_gbar_js(n: u32) -> Result<String, JsValue> {
    factorization(n as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = orderSeries)]
pub fn order_series_js(p: u32, max: u32, scaled: bool) -> Result<Vec<f64>, JsValue> {
    order_series(p as u64, max as u64, scaled).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = delangeCurve)]
pub fn delange_curve_js(b: u32, grid: u32) -> Result<Vec<f64>, JsValue> {
    delange_curve(b as u64, grid as usize).map_err(|e| JsValue::from_str(&e))
}
