//! WebAssembly entry points for `www/index.html`.
//!
//! Each operation returns a JSON string. The plain functions are what the
//! exports wrap, so they can be tested natively.

use diagperm::base::{closed_form_base, closed_form_greedy, greedy_alt_sym_top, BaseProblem, BoundaryReading, FormulaParams, SearchOptions};
use diagperm::catalog::SimpleSpec;
use diagperm::diagonal::{DiagonalConfig, DiagonalGroup, QLabel};
use diagperm::partition::{gamma_type, greedy_refine_sim, part_size_m, sigma_type, stab_order};
use diagperm::{Error, Result};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest |T| the page will build; bigger groups freeze the tab.
pub const MAX_T_ORDER: u64 = 504;

fn q_label(q: &str) -> Result<QLabel> {
    match q {
        "A" | "a" => Ok(QLabel::A),
        "S" | "s" => Ok(QLabel::S),
        other => Err(Error::Config(format!("Q must be A or S, got {other:?}"))),
    }
}

/// Greedy refinement from Sigma, with both closed-form readings.
pub fn refine_json(n: u64, k: u64, q: &str) -> Result<String> {
    let q = q_label(q)?;
    let sim = greedy_refine_sim(n, k, q)?;
    let sym = q == QLabel::S;
    let (a, _) = greedy_alt_sym_top(n, k, sym, BoundaryReading::QAlternating);
    let (s, rule) = greedy_alt_sym_top(n, k, sym, BoundaryReading::QSymmetric);
    let steps: Vec<String> = sim.steps.iter().map(ToString::to_string).collect();
    Ok(json!({
        "n": n,
        "k": k,
        "value": sim.value,
        "steps": steps,
        "largest_part_ok": sim.largest_part_ok,
        "repeated_largest_ok": sim.repeated_largest_ok,
        "q_symmetric_reading": s,
        "q_alternating_reading": a,
        "rule": rule,
    })
    .to_string())
}

/// Sigma and Gamma for `k` points in `n` parts, with stabiliser orders in Q.
pub fn types_json(k: u64, n: u64, q: &str) -> Result<String> {
    let q = q_label(q)?;
    let (sigma, gamma) = (sigma_type(k, n)?, gamma_type(k, n)?);
    Ok(json!({
        "k": k,
        "n": n,
        "m": part_size_m(k, n),
        "sigma": sigma.to_string(),
        "gamma": gamma.to_string(),
        "stab_sigma": stab_order(&sigma, q).to_string(),
        "stab_gamma": stab_order(&gamma, q).to_string(),
    })
    .to_string())
}

/// b and the greedy base sizes of `T^2` (socle) or `T^2.(Out(T) x S_2)` (full).
pub fn k2_json(t: &str, preset: &str) -> Result<String> {
    let spec: SimpleSpec = t.parse()?;
    if spec.expected_order() > MAX_T_ORDER {
        return Err(Error::resource(format!("|{spec}| = {}", spec.expected_order()), MAX_T_ORDER as usize));
    }
    let config = match preset {
        "socle" => DiagonalConfig::socle(spec, 2),
        "full" => DiagonalConfig::full(spec, 2),
        other => return Err(Error::Config(format!("preset must be socle or full, got {other:?}"))),
    };
    let g = DiagonalGroup::build(&config)?;
    let p = BaseProblem::from_diagonal(&g, usize::MAX)?;
    let opts = SearchOptions::default();
    let (b, base) = p.min_base(&opts)?;
    let greedy = p.greedy_sizes(&opts)?;
    let params = FormulaParams::of_group(&g);
    Ok(json!({
        "group": config.label(),
        "order": g.theoretical_order().to_string(),
        "omega": g.omega_size(),
        "b": b,
        "base": base,
        "greedy_sizes": greedy.sizes,
        "predicted_b": closed_form_base(&params)?.value,
        "predicted_greedy": closed_form_greedy(&params, BoundaryReading::QSymmetric)?.value,
    })
    .to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn refine(n: u32, k: u32, q: &str) -> std::result::Result<String, JsError> {
    js(refine_json(n.into(), k.into(), q))
}

#[wasm_bindgen]
pub fn partition_types(k: u32, n: u32, q: &str) -> std::result::Result<String, JsError> {
    js(types_json(k.into(), n.into(), q))
}

#[wasm_bindgen]
pub fn k2_bases(t: &str, preset: &str) -> std::result::Result<String, JsError> {
    js(k2_json(t, preset))
}
