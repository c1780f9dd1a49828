//! For `n = 3`, exact decompositions at every level from the s = 1 data,
//! by following the p-adic digits of `a` through a 5x5 transfer matrix.

use super::{decompose, Decomposition, QuadricContext, Source};
use crate::error::{HkqError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Summand basis `(O(-2), O(-1), O(0), S(0), S(-1))`.
pub const BASIS: [(Source, i64); 5] = [(Source::O, -2), (Source::O, -1), (Source::O, 0), (Source::S, 0), (Source::S, -1)];

/// Positions `(row, col)` that must vanish for every `p`.
pub const STRUCTURAL_ZEROS: [(usize, usize); 6] = [(0, 3), (1, 3), (1, 4), (2, 4), (3, 4), (4, 3)];

/// Row `k` is `F_*(E_k(P0))` written in [`BASIS`], where `E_k` is the k-th basis bundle
/// and `P0 = (p-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub p: u64,
    pub entries: [[BigInt; 5]; 5],
}

impl TransferMatrix {
    /// Row vector times matrix.
    pub fn apply(&self, v: &[BigInt; 5]) -> [BigInt; 5] {
        std::array::from_fn(|l| (0..5).map(|k| &v[k] * &self.entries[k][l]).sum())
    }
}

/// `F_*(E(b))` for any integer `b`, as counts keyed by `(source, twist)`.
fn pushforward_s1(ctx: &QuadricContext, b: i64, source: Source) -> Result<BTreeMap<(Source, i64), BigInt>> {
    let p = ctx.p as i64;
    let (shift, r) = b.div_mod_floor(&p);
    let d = decompose(ctx, 1, r, source)?;
    if !d.exact {
        return Err(HkqError::Inconsistent(format!("two spinor types for s=1 at a={r}")));
    }
    let mut out = BTreeMap::new();
    for (t, v) in d.nu.iter().filter(|(_, v)| !v.is_zero()) {
        *out.entry((Source::O, t + shift)).or_insert_with(BigInt::zero) += v;
    }
    for (t, v) in &d.mu {
        *out.entry((Source::S, t + shift)).or_insert_with(BigInt::zero) += v;
    }
    Ok(out)
}

fn to_basis(m: &BTreeMap<(Source, i64), BigInt>) -> Result<[BigInt; 5]> {
    if let Some(k) = m.keys().find(|k| !BASIS.contains(k)) {
        return Err(HkqError::Inconsistent(format!("summand {}({}) outside the transfer basis", k.0, k.1)));
    }
    Ok(std::array::from_fn(|i| m.get(&BASIS[i]).cloned().unwrap_or_default()))
}

/// The transfer matrix for `n = 3`. Defined for every odd prime.
pub fn transfer_matrix(p: u64) -> Result<TransferMatrix> {
    let ctx = QuadricContext::new(3, p)?;
    let p0 = (p as i64 - 1) / 2;
    let mut rows = Vec::with_capacity(5);
    for (src, t) in BASIS {
        rows.push(to_basis(&pushforward_s1(&ctx, p0 + t, src)?)?);
    }
    let entries: [[BigInt; 5]; 5] = rows.try_into().unwrap();
    for (r, c) in STRUCTURAL_ZEROS {
        if !entries[r][c].is_zero() {
            return Err(HkqError::Inconsistent(format!("transfer matrix entry ({},{}) is nonzero", r + 1, c + 1)));
        }
    }
    Ok(TransferMatrix { p, entries })
}

/// Exact decomposition of `F^s_*(O(a))` on `Q_3` for any `s`.
///
/// If the top `j` digits of `a` equal `P0` (at most `s-1` of them), the
/// pushforward factors through `F^j_*` of the level `s-j` answer, which
/// involves at most one spinor type and is computed by the ladders.
pub fn decompose_n3(p: u64, s: u32, a: i64) -> Result<Decomposition> {
    let ctx = QuadricContext::new(3, p)?;
    let q = ctx.q(s)?;
    if !(0..q).contains(&a) {
        return Err(HkqError::InvalidParameter(format!("a={a} outside [0, {q})")));
    }
    let pi = p as i64;
    let p0 = (pi - 1) / 2;
    let mut j = 0u32;
    let mut top = q / pi;
    while j + 1 < s && (a / top) % pi == p0 {
        j += 1;
        top /= pi;
    }
    let level = s - j;
    let base = decompose(&ctx, level, a % ctx.q(level)?, Source::O)?;
    if !base.exact {
        return Err(HkqError::Inconsistent(format!("base case at level {level} is not exact")));
    }
    let mut counts = BTreeMap::new();
    for (t, v) in &base.nu {
        counts.insert((Source::O, *t), v.clone());
    }
    for (t, v) in &base.mu {
        counts.insert((Source::S, *t), v.clone());
    }
    let mut v = to_basis(&counts)?;
    if j > 0 {
        let m = transfer_matrix(p)?;
        for _ in 0..j {
            v = m.apply(&v);
        }
    }
    let nu = BTreeMap::from([(-2, v[0].clone()), (-1, v[1].clone()), (0, v[2].clone())]);
    let mu: BTreeMap<i64, BigInt> =
        [(0, v[3].clone()), (-1, v[4].clone())].into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(Decomposition {
        n: 3,
        p,
        s,
        q,
        a,
        source: Source::O,
        nu,
        mu,
        exact: true,
        mu_bracket: None,
        nu_bracket: None,
        family: None,
    })
}
