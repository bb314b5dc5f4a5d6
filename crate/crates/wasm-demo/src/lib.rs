//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and also run natively.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rfd_core::fdapprox::{build_y, kernel_set, pi_f};
use rfd_core::funcalg::{
    conjugated_mult_operator, mult_operator, multiplier_norm_lower, root_of_unity, KernelSpec,
    Polynomial,
};
use rfd_core::monoid::{builtin, right_divisors, EnumerationTable, MonoidPresentation};

/// Upper limits keep a page interaction under a second or so.
const MAX_LENGTH: usize = 12;
const MAX_DEGREE: usize = 120;
const MAX_WORDS: u64 = 200_000;

fn presentation(spec: &str) -> Result<MonoidPresentation, String> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        MonoidPresentation::parse(spec).map_err(|e| e.to_string())
    } else {
        builtin(spec).map_err(|e| e.to_string())
    }
}

fn table(spec: &str, bound: usize) -> Result<EnumerationTable, String> {
    if bound > MAX_LENGTH {
        return Err(format!("length is capped at {MAX_LENGTH} in the demo"));
    }
    EnumerationTable::with_limit(presentation(spec)?, bound, MAX_WORDS).map_err(|e| e.to_string())
}

/// Element counts by length and the divisor count of every element.
pub fn growth_json(spec: &str, max_len: usize) -> Result<Value, String> {
    let t = table(spec, max_len)?;
    let divisors: Vec<usize> = t.elements().map(|p| right_divisors(&t, p).len()).collect();
    Ok(json!({
        "counts": t.counts(),
        "cancellative": t.is_cancellative(),
        "max_divisors": divisors.iter().max(),
        "elements": t.elements_upto(max_len.min(3)).map(|e| t.format(e)).collect::<Vec<_>>(),
    }))
}

/// The matrix of `π_F(λ_s)` on `Y_F` plus the kernel set up to `bound`.
pub fn compression_json(spec: &str, f: &str, s: &str, bound: usize) -> Result<Value, String> {
    let pres = presentation(spec)?;
    let words: Vec<&str> = f.split(',').map(str::trim).filter(|w| !w.is_empty()).collect();
    if words.is_empty() {
        return Err("F is empty".into());
    }
    let mut depth = 0;
    for w in words.iter().chain([&s]) {
        depth = depth.max(pres.parse_word(w).map_err(|e| e.to_string())?.len());
    }
    let t = table(spec, depth + depth.max(bound))?;
    t.ensure_cancellative().map_err(|e| e.to_string())?;
    let f: Vec<_> = words
        .iter()
        .map(|w| t.parse_element(w))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let s = t.parse_element(s).map_err(|e| e.to_string())?;
    let y = build_y(&t, &f).map_err(|e| e.to_string())?;
    let m = pi_f(&t, &y, s).map_err(|e| e.to_string())?;
    let mut dense = vec![vec![0u8; y.dim()]; y.dim()];
    for (r, c, _) in m.triplets() {
        dense[r][c] = 1;
    }
    let kernel: BTreeSet<_> = kernel_set(&t, &f, bound).map_err(|e| e.to_string())?;
    Ok(json!({
        "basis": y.basis().iter().map(|&e| t.format(e)).collect::<Vec<_>>(),
        "matrix": dense,
        "kernel": kernel.into_iter().map(|e| t.format(e)).collect::<Vec<_>>(),
    }))
}

/// Lower bounds for `‖M_φ‖` at degrees `step, 2·step, …, max_degree`, and
/// the covariance defect `max |Γ_ζ* M_φ Γ_ζ - M_{Γ_ζ̄ φ}|` at the `m`th
/// roots of unity.
pub fn norm_curve_json(
    kernel: &str,
    nvars: usize,
    phi: &str,
    max_degree: usize,
    step: usize,
    roots: u32,
) -> Result<Value, String> {
    if max_degree > MAX_DEGREE {
        return Err(format!("degree is capped at {MAX_DEGREE} in the demo"));
    }
    let k = KernelSpec::by_name(kernel, nvars).map_err(|e| e.to_string())?;
    let phi = Polynomial::parse(nvars, phi).map_err(|e| e.to_string())?;
    let step = step.max(1);
    let mut curve = Vec::new();
    for d in (step..=max_degree).step_by(step) {
        let n = multiplier_norm_lower(&k, &phi, d).map_err(|e| e.to_string())?;
        curve.push(json!([d, n]));
    }
    let cov_degree = max_degree.min(6);
    let mut defect: f64 = 0.0;
    for j in 0..roots.max(1) {
        let z = root_of_unity(j as i64, roots.max(1));
        let lhs = conjugated_mult_operator(&k, &phi, z, cov_degree).map_err(|e| e.to_string())?;
        let rhs = mult_operator(&k, &phi.circle_action(z.conj()).map_err(|e| e.to_string())?, cov_degree)
            .map_err(|e| e.to_string())?;
        defect = defect.max(lhs.max_abs_diff(&rhs).map_err(|e| e.to_string())?);
    }
    Ok(json!({ "curve": curve, "covariance_defect": defect, "phi": phi.to_string() }))
}

fn export(v: Result<Value, String>) -> Result<String, JsValue> {
    v.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn growth(spec: &str, max_len: usize) -> Result<String, JsValue> {
    export(growth_json(spec, max_len))
}

#[wasm_bindgen]
pub fn compression(spec: &str, f: &str, s: &str, bound: usize) -> Result<String, JsValue> {
    export(compression_json(spec, f, s, bound))
}

#[wasm_bindgen]
pub fn norm_curve(
    kernel: &str,
    nvars: usize,
    phi: &str,
    max_degree: usize,
    step: usize,
    roots: u32,
) -> Result<String, JsValue> {
    export(norm_curve_json(kernel, nvars, phi, max_degree, step, roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_growth() {
        let v = growth_json("braid(3)", 4).unwrap();
        assert_eq!(v["counts"], json!([1, 2, 4, 7, 12]));
        assert!(growth_json("free(2)", 40).is_err());
    }

    #[test]
    fn nat_compression() {
        let v = compression_json("nat(1)", "x.x", "x", 5).unwrap();
        assert_eq!(v["basis"], json!(["", "x", "x.x"]));
        assert_eq!(v["matrix"], json!([[0, 0, 0], [1, 0, 0], [0, 1, 0]]));
        assert_eq!(v["kernel"], json!(["x.x.x", "x.x.x.x", "x.x.x.x.x"]));
    }

    #[test]
    fn hardy_curve() {
        let v = norm_curve_json("hardy", 1, "1 + z", 40, 20, 8).unwrap();
        let curve = v["curve"].as_array().unwrap();
        assert_eq!(curve.len(), 2);
        let (a, b) = (curve[0][1].as_f64().unwrap(), curve[1][1].as_f64().unwrap());
        assert!(a <= b && b <= 2.0);
        assert!(v["covariance_defect"].as_f64().unwrap() <= 1e-12);
    }
}
