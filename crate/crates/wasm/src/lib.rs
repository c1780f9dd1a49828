//! Browser bindings. Every export takes plain numbers and returns a JSON string;
//! failures come back as `{"error": "..."}`.

use hkq_core::arith::{rat, Rational};
use hkq_core::density::{ehk, ehk_infinity, f_infinity, f_p, one_plus_m, DensityProfile, HKBracket};
use hkq_core::frobenius::{decompose, decompose_n3, QuadricContext, Source};
use hkq_core::Result;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use wasm_bindgen::prelude::*;

fn f(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn text(v: &Rational) -> String {
    v.to_string()
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn profile(n: u32, p: u32) -> Result<DensityProfile> {
    if p == 0 {
        f_infinity(n)
    } else {
        f_p(n, p as u64)
    }
}

/// Sampled density on `[0, n]`; `p = 0` means the limit `p -> inf`.
#[wasm_bindgen]
pub fn density_curve(n: u32, p: u32, samples: u32) -> String {
    respond((|| {
        let prof = profile(n, p)?;
        let k = samples.clamp(2, 4000) as i64;
        let (mut xs, mut lo, mut hi) = (Vec::new(), Vec::new(), Vec::new());
        for t in 0..=k {
            let x = rat(n as i64 * t, k);
            let v = prof.eval(&x);
            xs.push(f(&x));
            lo.push(f(v.lower()));
            hi.push(f(v.upper()));
        }
        let middle = prof.difficult_range.as_ref().map(|d| json!([f(&d.lo), f(&d.hi)]));
        let breaks: Vec<f64> = prof.breakpoints().iter().map(f).collect();
        Ok(json!({ "x": xs, "lower": lo, "upper": hi, "breakpoints": breaks, "middle": middle }))
    })())
}

/// Bracket for the HK multiplicity, with the limit value `1 + m_{n+1}` alongside.
#[wasm_bindgen]
pub fn ehk_bracket(n: u32, p: u32, digits: u32) -> String {
    respond((|| {
        let b = if p == 0 {
            HKBracket::exact(ehk_infinity(n)?)
        } else {
            let eps = Rational::new(1.into(), BigInt::from(10u32).pow(digits.clamp(1, 30)));
            ehk(n, p as u64, &eps)?
        };
        let limit = one_plus_m(n);
        Ok(json!({
            "lower": text(&b.lower),
            "upper": text(&b.upper),
            "lower_f64": f(&b.lower),
            "upper_f64": f(&b.upper),
            "method": b.method.to_string(),
            "limit": text(&limit),
            "limit_f64": f(&limit),
        }))
    })())
}

/// Splitting of `F^s_*(O(a))`.
#[wasm_bindgen]
pub fn decompose_json(n: u32, p: u32, s: u32, a: i32) -> String {
    respond((|| {
        let ctx = QuadricContext::new(n, p as u64)?;
        ctx.require_closed_form()?;
        let a = a as i64;
        let d = if n == 3 { decompose_n3(p as u64, s, a)? } else { decompose(&ctx, s, a, Source::O)? };
        let counts = |m: &std::collections::BTreeMap<i64, BigInt>| {
            let mut out = Map::new();
            for (t, v) in m.iter().rev() {
                out.insert(t.to_string(), json!(v.to_string()));
            }
            Value::Object(out)
        };
        let mut v = json!({ "q": d.q, "a": d.a, "nu": counts(&d.nu), "mu": counts(&d.mu), "exact": d.exact });
        if let Some(fam) = &d.family {
            v["family"] = json!({
                "twists": [-fam.k, -fam.k - 1],
                "b_min": fam.b_min.to_string(),
                "b_max": fam.b_max.to_string(),
            });
        }
        Ok(v)
    })())
}
