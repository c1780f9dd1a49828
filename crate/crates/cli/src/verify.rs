//! Formula-versus-oracle cross-checks.

use crate::output::{int_json, rat_json};
use hkq_core::frobenius::{decompose, decompose_n3, graded_lengths, power, PairValue, QuadricContext, Source};
use hkq_core::oracle::{check_fits, graded_length_macaulay, graded_lengths_tensor, largest_blocks};
use hkq_core::density::verify_wy;
use hkq_core::{HkqError, Result};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

/// Largest `q` for which the formula side tabulates every degree.
pub const FORMULA_Q_LIMIT: i64 = 100_000;

/// Oracle colengths for every degree, choosing elimination or Jordan types.
fn oracle_levels(n: u32, p: u64, s: u32, ceiling: usize) -> Result<(Vec<u128>, &'static str)> {
    check_fits(p, s, ceiling)?;
    let blocks = largest_blocks(n, p, s);
    if let Ok(sides) = &blocks {
        if sides.iter().all(|&b| b <= ceiling as u128) {
            let vals = (0..sides.len() as u64)
                .into_par_iter()
                .map(|d| graded_length_macaulay(n, p, s, d, ceiling))
                .collect::<Result<Vec<_>>>()?;
            return Ok((vals, "macaulay"));
        }
    }
    match blocks {
        Ok(_) | Err(HkqError::ResourceCeiling(_)) => Ok((graded_lengths_tensor(n, p, s, ceiling)?, "tensor")),
        Err(e) => Err(e),
    }
}

fn pair_json(v: &PairValue) -> Value {
    match v {
        PairValue::Exact(x) => json!({ "value": int_json(x) }),
        PairValue::Bracket(lo, hi) => json!({ "lo": int_json(lo), "hi": int_json(hi) }),
    }
}

struct Level {
    json: Value,
    mismatches: usize,
}

fn skipped(s: u32, q: Option<i64>, err: &HkqError) -> Level {
    Level { json: json!({ "s": s, "q": q, "status": "skipped", "reason": err.to_string() }), mismatches: 0 }
}

fn level(ctx: &QuadricContext, s: u32, ceiling: usize) -> Result<Level> {
    let (n, p) = (ctx.n, ctx.p);
    let q = match power(p, s) {
        Ok(q) => q,
        Err(e @ HkqError::ResourceCeiling(_)) => return Ok(skipped(s, None, &e)),
        Err(e) => return Err(e),
    };
    if q > FORMULA_Q_LIMIT {
        let e = HkqError::ResourceCeiling(format!("q={q} exceeds the tabulation limit {FORMULA_Q_LIMIT}"));
        return Ok(skipped(s, Some(q), &e));
    }
    let (oracle, route) = match oracle_levels(n, p, s, ceiling) {
        Ok(v) => v,
        Err(e @ HkqError::ResourceCeiling(_)) => return Ok(skipped(s, Some(q), &e)),
        Err(e) => return Err(e),
    };
    let ours = graded_lengths(ctx, s)?;

    let mut rows = Vec::with_capacity(ours.len());
    let (mut matched, mut contained, mut mismatches) = (0usize, 0usize, 0usize);
    for (d, v) in ours.iter().enumerate() {
        let o = BigInt::from(oracle.get(d).copied().unwrap_or(0));
        let status = match (v.is_exact(), v.contains(&o)) {
            (true, true) => {
                matched += 1;
                "match"
            }
            (false, true) => {
                contained += 1;
                "contained"
            }
            _ => {
                mismatches += 1;
                "mismatch"
            }
        };
        rows.push(json!({ "d": d, "formula": pair_json(v), "oracle": int_json(&o), "status": status }));
    }
    // nothing past the formula's support
    let tail: u128 = oracle.iter().skip(ours.len()).sum();
    if tail != 0 {
        mismatches += 1;
    }

    let failures: Vec<i64> = (0..q)
        .into_par_iter()
        .map(|a| {
            let d = if n == 3 { decompose_n3(p, s, a) } else { decompose(ctx, s, a, Source::O) };
            d.map(|d| (a, d.rank_identity_holds()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(a, _)| a)
        .collect();
    mismatches += failures.len();

    let total: PairValue = ours.iter().fold(PairValue::Exact(BigInt::from(0)), |acc, v| acc.add(v));
    let oracle_total = BigInt::from(oracle.iter().sum::<u128>());
    Ok(Level {
        json: json!({
            "s": s,
            "q": q,
            "status": "checked",
            "oracle_route": route,
            "summary": { "match": matched, "contained": contained, "mismatch": mismatches },
            "total": { "formula": pair_json(&total), "oracle": int_json(&oracle_total) },
            "rank_identity": { "checked": q, "failures": failures },
            "degrees": rows,
        }),
        mismatches,
    })
}

/// Full report and whether everything that could be checked agreed.
pub fn run(n: u32, p: u64, max_s: u32, ceiling: usize, precision: usize) -> Result<(Value, bool)> {
    let ctx = QuadricContext::new(n, p)?;
    ctx.require_closed_form()?;
    if max_s == 0 {
        return Err(HkqError::InvalidParameter("--max-s must be at least 1".into()));
    }
    let mut levels = Vec::new();
    let mut ok = true;
    for s in 1..=max_s {
        let l = level(&ctx, s, ceiling)?;
        ok &= l.mismatches == 0;
        levels.push(l.json);
    }
    let wy = verify_wy(n, p)?;
    ok &= wy.all_ok();
    let wy_json = json!({
        "off_middle_equal": wy.off_middle_equal.to_string(),
        "middle_dominates": wy.middle_dominates.to_string(),
        "ehk_bounds": wy.ehk_bounds.to_string(),
        "symmetry": wy.symmetry.to_string(),
        "ehk": {
            "lower": rat_json(&wy.ehk.lower, precision),
            "upper": rat_json(&wy.ehk.upper, precision),
            "method": wy.ehk.method.to_string(),
        },
    });
    Ok((json!({ "ok": ok, "levels": levels, "density_checks": wy_json }), ok))
}
