//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Each exported function returns a JSON string; the page parses it and
//! draws. The `*_json` functions hold the logic and run natively in tests.

use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ibt_core::identities::{verify_grid, Grid, IdentityId};
use ibt_core::{
    char_roots, iterated_fibonacci_spec, iterated_lucas_spec, QuadElement, TransformParams,
};

/// `log10|x|` from the decimal expansion, so huge terms still plot.
/// Zero maps to `None`.
pub fn log10_abs(x: &BigInt) -> Option<f64> {
    let s = x.magnitude().to_string();
    if s == "0" {
        return None;
    }
    let lead: f64 = s[..s.len().min(17)].parse().ok()?;
    Some(lead.log10() + (s.len() - s.len().min(17)) as f64)
}

fn params(k: i32, r: u32) -> Result<TransformParams, String> {
    TransformParams::new(k.into(), r.into()).map_err(|e| e.to_string())
}

fn approx(x: &QuadElement) -> f64 {
    let to_f = |q: &ibt_core::Rational| {
        let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
        n / d
    };
    let d: f64 = x.radicand().to_string().parse().unwrap_or(f64::NAN);
    to_f(x.rational_part()) + to_f(x.irrational_part()) * d.sqrt()
}

pub fn sequence_json(family: &str, k: i32, r: u32, count: u32) -> Result<String, String> {
    let p = params(k, r)?;
    let spec = match family {
        "lucas" => iterated_lucas_spec(&p),
        "fibonacci" => iterated_fibonacci_spec(&p),
        other => return Err(format!("unknown family `{other}`")),
    };
    let terms = spec.terms(count as usize);
    let v = json!({
        "family": family,
        "k": k,
        "r": r,
        "terms": terms.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        "log10": terms.iter().map(log10_abs).collect::<Vec<_>>(),
    });
    Ok(v.to_string())
}

pub fn roots_json(k: i32, r: u32) -> Result<String, String> {
    let p = params(k, r)?;
    let (l1, l2) = char_roots(&p);
    let root = |x: &QuadElement| -> Value {
        json!({
            "exact": x.to_string(),
            "approx": approx(x),
        })
    };
    let v = json!({
        "trace": p.trace().to_string(),
        "det": p.det().to_string(),
        "disc": p.disc().to_string(),
        "lambda1": root(&l1),
        "lambda2": root(&l2),
    });
    Ok(v.to_string())
}

pub fn verify_json(
    identity: &str,
    k_lo: i32,
    k_hi: i32,
    r_lo: u32,
    r_hi: u32,
    n_max: u32,
) -> Result<String, String> {
    let id: IdentityId = identity
        .parse()
        .map_err(|e: ibt_core::Error| e.to_string())?;
    let grid = Grid::new(
        k_lo.into()..=k_hi.into(),
        r_lo.into()..=r_hi.into(),
        n_max.into(),
    );
    let report = verify_grid(id, &grid).map_err(|e| e.to_string())?;
    Ok(report.to_json().to_string())
}

#[wasm_bindgen]
pub fn sequence(family: &str, k: i32, r: u32, count: u32) -> Result<String, JsValue> {
    sequence_json(family, k, r, count).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn roots(k: i32, r: u32) -> Result<String, JsValue> {
    roots_json(k, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(
    identity: &str,
    k_lo: i32,
    k_hi: i32,
    r_lo: u32,
    r_hi: u32,
    n_max: u32,
) -> Result<String, JsValue> {
    verify_json(identity, k_lo, k_hi, r_lo, r_hi, n_max).map_err(|e| JsValue::from_str(&e))
}
