//! JavaScript entry points.

use wasm_bindgen::prelude::*;

fn js<T>(r: crate::Result<T>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = compareMethods)]
pub fn compare_methods(domain: &str, n: usize, steps: usize) -> Result<Vec<f64>, JsError> {
    js(crate::compare_methods(domain, n, steps))
}

#[wasm_bindgen(js_name = gapTrace)]
pub fn gap_trace(n: usize, steps: usize, noise: f64, seed: u32) -> Result<Vec<f64>, JsError> {
    js(crate::gap_trace(n, steps, noise, u64::from(seed)))
}

#[wasm_bindgen(js_name = scheduleWeights)]
pub fn schedule_weights(
    kind: &str,
    steps: usize,
    sigma: f64,
    constant: f64,
    nu: f64,
    radius: f64,
) -> Result<Vec<f64>, JsError> {
    js(crate::schedule_weights(
        kind, steps, sigma, constant, nu, radius,
    ))
}
