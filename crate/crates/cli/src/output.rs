//! Exact JSON and CSV rendering.

use hkq_core::arith::Rational;
use hkq_core::HkqError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Number, Value};
use std::str::FromStr;

/// An arbitrary-size integer as a JSON number.
pub fn int_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

/// `{"num", "den", "decimal"}` with `decimal` rounded half away from zero.
pub fn rat_json(v: &Rational, precision: usize) -> Value {
    json!({
        "num": int_json(v.numer()),
        "den": int_json(v.denom()),
        "decimal": decimal(v, precision),
    })
}

pub fn decimal(v: &Rational, precision: usize) -> String {
    let scale = BigInt::from(10u32).pow(precision as u32);
    let scaled = v.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + Rational::new(1.into(), 2.into())).floor().to_integer();
    let digits = rounded.to_string();
    let sign = if v.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if precision == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = precision + 1);
    let (whole, frac) = padded.split_at(padded.len() - precision);
    format!("{sign}{whole}.{frac}")
}

/// Parses `7`, `-2/3`, `0.25` or `1e-6` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, HkqError> {
    let bad = || HkqError::InvalidParameter(format!("cannot read {s:?} as a rational number"));
    let t = s.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
        let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(a, b));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (whole, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if whole.is_empty() && frac.is_empty() || !(whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{whole}{frac}0")).map_err(|_| bad())? / 10;
    let e = exp - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut v = Rational::from_integer(digits) * num_traits::Pow::pow(&ten, e);
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Top-level record: command, parameters, result and optional timing.
pub fn record(command: &str, parameters: Value, result: Value, elapsed_ms: Option<f64>) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("parameters".into(), parameters);
    m.insert("result".into(), result);
    if let Some(ms) = elapsed_ms {
        m.insert("timing_ms".into(), json!((ms * 1000.0).round() / 1000.0));
    }
    Value::Object(m)
}
