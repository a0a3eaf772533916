//! Browser bindings. Each export wraps a plain function returning JSON text,
//! so the logic is testable natively.

use parkfn::dist::{empirical_distribution, lel_law_counts, slev_law_counts};
use parkfn::forest::phi_inv;
use parkfn::gf::{check_identity, closed_form, Family, Identity};
use parkfn::involutions::{reduced_preference_partition, rho_hat, theta_hat};
use parkfn::pf::{fmt_prefs, parse_prefs};
use parkfn::{ParkingFunction, Params, SizeCap, Statistic};
use num_traits::ToPrimitive;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Browser enumerations stay well below the native default.
const WEB_CAP: SizeCap = SizeCap(2_000_000);
const MAX_SAMPLES: usize = 200_000;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn params(m: u32, n: u32, a: u32, b: u32) -> Result<Params, String> {
    // a = 0 selects the classical family
    if a == 0 {
        Params::classical(m, n).map_err(err)
    } else {
        Params::ab(a, b, m).map_err(err)
    }
}

/// Forest of a parking function in PF(m, n), with θ̂ and ρ̂ when m = n.
pub fn explore(prefs: &str, n: u32) -> Result<String, String> {
    let prefs = parse_prefs(prefs).map_err(err)?;
    let m = prefs.len() as u32;
    let n = if n == 0 { m } else { n };
    let pf = ParkingFunction::classical(m, n, prefs).map_err(err)?;
    let forest = phi_inv(&pf).map_err(err)?;
    let parents: Vec<String> = forest.parents().iter().map(ToString::to_string).collect();
    let mut out = json!({
        "pf": fmt_prefs(pf.prefs()),
        "parents": parents,
        "lel": pf.lel(),
        "slev": pf.slev(),
        "ones": pf.ones(),
        "deg0": forest.deg_root_total(),
        "degp": forest.deg_parent_of_1(),
        "partition": reduced_preference_partition(pf.prefs()).to_string(),
    });
    if m == n {
        out["theta_hat"] = json!(fmt_prefs(theta_hat(&pf).map_err(err)?.prefs()));
        out["rho_hat"] = json!(fmt_prefs(rho_hat(&pf).map_err(err)?.prefs()));
    }
    Ok(out.to_string())
}

/// Sampled frequencies of `lel - 1` or `slev - 1` beside the exact binomial law.
pub fn histogram(statistic: &str, m: u32, n: u32, samples: u32, seed: u32) -> Result<String, String> {
    let stat: Statistic = statistic.parse().map_err(err)?;
    let params = Params::classical(m, n).map_err(err)?;
    let law = match stat {
        Statistic::Lel => lel_law_counts(m, n),
        Statistic::Slev => slev_law_counts(m, n),
        _ => return Err(format!("no exact law for {stat}; use lel or slev")),
    };
    let samples = samples as usize;
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must be in [1, {MAX_SAMPLES}]"));
    }
    let table = empirical_distribution(Family::Pf, params, stat, samples, seed as u64).map_err(err)?;
    let law: Vec<f64> = law.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let total: f64 = law.iter().sum();
    let rows: Vec<_> = law
        .iter()
        .enumerate()
        .map(|(j, c)| json!({ "value": j, "sampled": table.frequency(j as u32 + 1), "exact": c / total }))
        .collect();
    Ok(json!({ "statistic": stat, "samples": samples, "seed": seed, "rows": rows }).to_string())
}

/// Closed form against enumeration for one identity.
pub fn identity(id: &str, m: u32, n: u32, a: u32, b: u32) -> Result<String, String> {
    let id: Identity = id.parse().map_err(err)?;
    let params = params(m, n, a, b)?;
    let report = check_identity(id, params, WEB_CAP).map_err(err)?;
    let rhs = closed_form(id, params).map_err(err)?;
    Ok(json!({
        "identity": id,
        "params": params.to_string(),
        "equal": report.equal,
        "closed_form": rhs.to_string(),
        "terms": rhs.len(),
    })
    .to_string())
}

#[wasm_bindgen(js_name = explore)]
pub fn explore_js(prefs: &str, n: u32) -> Result<String, JsValue> {
    explore(prefs, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = histogram)]
pub fn histogram_js(statistic: &str, m: u32, n: u32, samples: u32, seed: u32) -> Result<String, JsValue> {
    histogram(statistic, m, n, samples, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = identity)]
pub fn identity_js(id: &str, m: u32, n: u32, a: u32, b: u32) -> Result<String, JsValue> {
    identity(id, m, n, a, b).map_err(|e| JsValue::from_str(&e))
}
