//! Browser bindings for the static demo page in `www/`. Every export returns
//! a JSON string; exact rationals travel as `"num/den"` text because JS
//! numbers cannot hold large numerators.

use num_traits::ToPrimitive;
use permuto_core::arith::{factorial, int};
use permuto_core::formulas::{mu_closed, mu_result};
use permuto_core::localization::{chern_pairing, monomial_pairing, EvaluationPoint};
use permuto_core::monomial::{
    find_vanishing_pattern, reduce_with_trace, reduction_coefficient, ExponentVector,
};
use permuto_core::{BigRational, Error};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` for the heatmap.
pub const MAX_TABLE_N: u32 = 40;
/// `(n+1)!` fixed points must stay interactive in a browser tab.
pub const MAX_PAIR_N: u32 = 7;

fn rational(v: &BigRational) -> Value {
    json!({
        "text": v.to_string(),
        "approx": v.to_f64(),
    })
}

fn bounded(name: &str, value: u32, max: u32) -> Result<(), Error> {
    if value > max {
        return Err(Error::InvalidArgument(format!(
            "{name} must be at most {max}, got {value}"
        )));
    }
    Ok(())
}

/// `[{n, k, mu, chern_number}]` for `1 <= n <= n_max`.
pub fn mu_table_json(n_max: u32) -> Result<String, Error> {
    bounded("n_max", n_max, MAX_TABLE_N)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for k in 0..=n {
            let r = mu_result(k, n)?;
            rows.push(json!({
                "n": n,
                "k": k,
                "mu": rational(&r.mu),
                "chern_number": r.chern_number.to_string(),
            }));
        }
    }
    Ok(Value::Array(rows).to_string())
}

/// Block decomposition and rewriting steps, or the vanishing pattern.
pub fn reduce_json(vector: &str) -> Result<String, Error> {
    let v: ExponentVector = vector.parse()?;
    v.ensure_top_degree()?;
    let body = match reduce_with_trace(&v)? {
        Some(trace) => json!({
            "vector": v.entries(),
            "vanishes": false,
            "blocks": trace.decomposition.blocks().iter().map(|b| b.expansion()).collect::<Vec<_>>(),
            "steps": trace.steps.iter().map(|s| json!({
                "rule": s.rule.to_string(),
                "position": s.position,
                "factor": s.factor.to_string(),
                "after": s.after,
            })).collect::<Vec<_>>(),
            "coefficient": rational(&trace.coefficient),
        }),
        None => {
            let p = find_vanishing_pattern(&v).ok_or_else(|| {
                Error::Inconsistency(format!("({v}) has no parse and no vanishing pattern"))
            })?;
            json!({
                "vector": v.entries(),
                "vanishes": true,
                "pattern": {"start": p.start, "end": p.end, "run": p.run},
                "coefficient": rational(&BigRational::default()),
            })
        }
    };
    Ok(body.to_string())
}

/// Localizes `c_k c_{n-k}` (or, when `vector` is non-empty, that monomial)
/// over all `(n+1)!` fixed points and sets it beside the closed form.
pub fn pair_json(vector: &str, n: u32, k: u32) -> Result<String, Error> {
    let (n, pairing, expected) = if vector.trim().is_empty() {
        bounded("n", n, MAX_PAIR_N)?;
        let t = EvaluationPoint::standard(n as usize);
        (n, chern_pairing(k, n, &t)?, mu_closed(k, n)?)
    } else {
        let v: ExponentVector = vector.parse()?;
        let n = v.len() as u32;
        bounded("n", n, MAX_PAIR_N)?;
        let t = EvaluationPoint::standard(n as usize);
        (n, monomial_pairing(&v, &t)?, reduction_coefficient(&v)?)
    };
    let expected = int(factorial(n as i64 + 1)?) * expected;
    Ok(json!({
        "n": n,
        "fixed_points": factorial(n as i64 + 1)?.to_string(),
        "pairing": rational(&pairing),
        "expected": rational(&expected),
        "agree": pairing == expected,
    })
    .to_string())
}

fn js(result: Result<String, Error>) -> Result<String, JsError> {
    result.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = muTable)]
pub fn mu_table(n_max: u32) -> Result<String, JsError> {
    js(mu_table_json(n_max))
}

#[wasm_bindgen]
pub fn reduce(vector: &str) -> Result<String, JsError> {
    js(reduce_json(vector))
}

#[wasm_bindgen]
pub fn pair(vector: &str, n: u32, k: u32) -> Result<String, JsError> {
    js(pair_json(vector, n, k))
}
