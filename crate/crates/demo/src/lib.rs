//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the
//! logic and are plain Rust, so they can be tested natively.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::Serialize;
use wasm_bindgen::prelude::*;

use sliceforge::growth::{coeff_type_estimate, growth_type_estimate};
use sliceforge::proximate::ProximateOrder;
use sliceforge::series::SliceSeries;
use sliceforge::superosc::{build_fn, evolve, plot_data, PlotData};

const MAX_PLOT_POINTS: f64 = 20_000.0;

#[derive(Debug, Serialize)]
pub struct Superoscillation {
    pub n: usize,
    pub a: f64,
    pub t: f64,
    pub max_deviation: f64,
    #[serde(flatten)]
    pub plot: PlotData,
}

/// ψ_n(x, t) against the plane wave e^{i(ax − a²t)} on [−half_width, half_width].
pub fn superoscillation_json(n: usize, a: f64, t: f64, half_width: f64, step: f64) -> Result<String, String> {
    if !(step > 0.0) || 2.0 * half_width / step > MAX_PLOT_POINTS {
        return Err(format!("step {step} gives too many points on [-{half_width}, {half_width}]"));
    }
    let w = build_fn(n, a).map_err(|e| e.to_string())?;
    let plot = plot_data(&evolve(&w, t), half_width, step).map_err(|e| e.to_string())?;
    let max_deviation = (0..plot.x.len())
        .map(|i| (plot.re_psi[i] - plot.re_limit[i]).hypot(plot.im_psi[i] - plot.im_limit[i]))
        .fold(0.0, f64::max);
    to_json(&Superoscillation { n, a, t, max_deviation, plot })
}

#[derive(Debug, Serialize)]
pub struct OrderCurves {
    pub r: Vec<f64>,
    pub order: Vec<f64>,
    pub l: Vec<usize>,
    pub phi: Vec<f64>,
    pub log_g: Vec<f64>,
}

fn order_from(family: &str, rho: f64, b: f64, r0: f64) -> Result<ProximateOrder, String> {
    let po = match family {
        "constant" => ProximateOrder::constant(rho),
        "log-shift" => ProximateOrder::log_shift(rho, b, r0).and_then(|p| p.normalize(r0)),
        other => return Err(format!("unknown order family '{other}'")),
    };
    po.map_err(|e| e.to_string())
}

/// ϱ(r) on a log grid, φ(ℓ) and ln G_ℓ for ℓ ≤ max_l.
pub fn order_curves_json(family: &str, rho: f64, b: f64, r0: f64, max_l: usize) -> Result<String, String> {
    if max_l == 0 || max_l > 5000 {
        return Err(format!("max_l must be in 1..=5000, got {max_l}"));
    }
    let po = order_from(family, rho, b, r0)?;
    let r: Vec<f64> = (0..=200).map(|i| 10f64.powf(-2.0 + 8.0 * i as f64 / 200.0)).collect();
    let order = r.iter().map(|&x| po.eval(x)).collect();
    let l: Vec<usize> = (1..=max_l).collect();
    let phi = l.iter().map(|&k| po.phi(k as f64)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let log_g = l.iter().map(|&k| po.log_g(k)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    to_json(&OrderCurves { r, order, l, phi, log_g })
}

#[derive(Debug, Serialize)]
pub struct TypeComparison {
    pub sigma0: f64,
    pub degree: usize,
    pub implied_type: f64,
    pub alternative_type: f64,
    pub growth_type: f64,
    pub validity_radius: Option<f64>,
}

/// Both type estimators on the degree-N truncation of e^{σ₀x}, with ϱ = 1.
pub fn type_estimates_json(sigma0: f64, degree: usize) -> Result<String, String> {
    if !(sigma0 >= 0.0) || !(20..=2000).contains(&degree) {
        return Err(format!("need sigma0 >= 0 and 20 <= N <= 2000, got sigma0={sigma0}, N={degree}"));
    }
    let po = ProximateOrder::constant(1.0).map_err(|e| e.to_string())?;
    let f = SliceSeries::exp_truncated(1, sigma0, degree);
    let c = coeff_type_estimate(&f, &po).map_err(|e| e.to_string())?;
    let g = growth_type_estimate(&f, &po, 400).map_err(|e| e.to_string())?;
    to_json(&TypeComparison {
        sigma0,
        degree,
        implied_type: c.implied_type,
        alternative_type: c.alternative_type,
        growth_type: g.value,
        validity_radius: g.validity_radius.is_finite().then_some(g.validity_radius),
    })
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn superoscillation(n: usize, a: f64, t: f64, half_width: f64, step: f64) -> Result<String, JsValue> {
    superoscillation_json(n, a, t, half_width, step).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn order_curves(family: &str, rho: f64, b: f64, r0: f64, max_l: usize) -> Result<String, JsValue> {
    order_curves_json(family, rho, b, r0, max_l).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn type_estimates(sigma0: f64, degree: usize) -> Result<String, JsValue> {
    type_estimates_json(sigma0, degree).map_err(|e| JsValue::from_str(&e))
}
