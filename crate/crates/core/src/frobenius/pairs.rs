//! Graded colengths `l(R/m^[q])_d` from the pair values `nu_{-i} + 2 rk(S) mu_{-i+1}`.

use super::{decompose, decompose_n3, Decomposition, PairValue, Parity, QuadricContext, Source};
use crate::arith::rat;
use crate::error::{HkqError, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Pair values for one residue `a`: entry `i` is the colength in degree `a + iq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    pub q: i64,
    pub a: i64,
    pub entries: Vec<PairValue>,
}

fn decomposition_for_pairs(ctx: &QuadricContext, s: u32, a: i64) -> Result<Decomposition> {
    if ctx.n == 3 {
        decompose_n3(ctx.p, s, a)
    } else {
        decompose(ctx, s, a, Source::O)
    }
}

pub fn pair_table(ctx: &QuadricContext, s: u32, a: i64) -> Result<PairTable> {
    ctx.require_closed_form()?;
    let d = decomposition_for_pairs(ctx, s, a)?;
    let mut entries: Vec<PairValue> = (0..ctx.n as i64).map(|i| d.pair_entry(i)).collect();
    if let Some(f) = &d.family {
        // Coarser bound: drop the spinor term, then add back at most twice the rank residual.
        let i = (f.k + 2) as usize;
        if i < entries.len() {
            let lo = d.nu_at(-(f.k + 2));
            let residual = d.expected_rank() - d.nu.values().sum::<BigInt>();
            let coarse = PairValue::Bracket(lo.clone(), lo + residual * 2);
            entries[i] = entries[i].intersect(&coarse)?;
        }
    }
    Ok(PairTable { q: d.q, a, entries })
}

/// Which entries the closed-form case analysis declares computable, judged
/// only from the position of `a/q`.
pub fn lemma_computable(ctx: &QuadricContext, s: u32, a: i64) -> Result<Vec<bool>> {
    let q = ctx.q(s)?;
    let x = rat(a, q);
    let h = ctx.middle_halfwidth();
    let n0 = ctx.n0;
    Ok((0..ctx.n as i64)
        .map(|i| {
            if i == n0 + 1 {
                match ctx.parity {
                    Parity::Even => x < rat(1, 1) - &h,
                    Parity::Odd => x < rat(1, 2) - &h || x >= rat(1, 2) + &h,
                }
            } else if i == n0 + 2 {
                match ctx.parity {
                    Parity::Even => x >= h,
                    Parity::Odd => true,
                }
            } else {
                true
            }
        })
        .collect())
}

/// `l(R/m^[q])_d`.
pub fn graded_length(ctx: &QuadricContext, s: u32, d: i64) -> Result<PairValue> {
    if d < 0 {
        return Err(HkqError::InvalidParameter(format!("degree {d} is negative")));
    }
    let q = ctx.q(s)?;
    let (i, a) = (d / q, d % q);
    if i >= ctx.n as i64 {
        return Ok(PairValue::Exact(BigInt::zero()));
    }
    Ok(pair_table(ctx, s, a)?.entries[i as usize].clone())
}

/// `l(R/m^[q])_d` for `0 <= d < nq`; higher degrees vanish.
pub fn graded_lengths(ctx: &QuadricContext, s: u32) -> Result<Vec<PairValue>> {
    let q = ctx.q(s)?;
    let tables = (0..q).map(|a| pair_table(ctx, s, a)).collect::<Result<Vec<_>>>()?;
    Ok((0..ctx.n as usize * q as usize)
        .map(|d| tables[d % q as usize].entries[d / q as usize].clone())
        .collect())
}

/// `l(R/m^[q])`, summed interval-wise.
pub fn total_colength(ctx: &QuadricContext, s: u32) -> Result<PairValue> {
    Ok(graded_lengths(ctx, s)?.iter().fold(PairValue::Exact(BigInt::zero()), |acc, v| acc.add(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32, p: u64) -> QuadricContext {
        QuadricContext::new(n, p).unwrap()
    }

    fn exact(v: i64) -> PairValue {
        PairValue::Exact(BigInt::from(v))
    }

    #[test]
    fn table_examples() {
        let c = ctx(3, 5);
        assert_eq!(pair_table(&c, 1, 0).unwrap().entries, vec![exact(1), exact(86), exact(62)]);
        assert_eq!(pair_table(&c, 1, 4).unwrap().entries[2], exact(0));
        let c4 = ctx(4, 5);
        let lemma = lemma_computable(&c4, 1, 2).unwrap();
        assert!(lemma[c4.n0 as usize + 2]);
        let t = pair_table(&c4, 1, 2).unwrap();
        let l = super::super::l_eval(&c4, 1, c4.n0 as usize + 2, 2).unwrap();
        assert_eq!(t.entries[c4.n0 as usize + 2], PairValue::Exact(l));
    }

    #[test]
    fn graded_length_examples() {
        let c = ctx(3, 5);
        assert_eq!(graded_length(&c, 1, 0).unwrap(), exact(1));
        assert_eq!(graded_length(&c, 1, 12).unwrap(), exact(1));
        assert_eq!(graded_length(&c, 1, 15).unwrap(), exact(0));
        assert_eq!(total_colength(&c, 1).unwrap(), exact(753));
    }

    #[test]
    fn gate_is_enforced() {
        let c = ctx(5, 5);
        assert!(matches!(pair_table(&c, 1, 0), Err(HkqError::ValidityGate { .. })));
    }

    #[test]
    fn z_entries_below_the_middle() {
        for (n, p) in [(3u32, 5u64), (4, 5), (5, 7), (6, 5)] {
            let c = ctx(n, p);
            for s in 1..3 {
                let q = c.q(s).unwrap();
                for a in 0..q {
                    let t = pair_table(&c, s, a).unwrap();
                    for i in 0..=c.n0 as usize {
                        assert_eq!(t.entries[i], PairValue::Exact(super::super::z_eval(&c, s, i, a).unwrap()));
                    }
                    for i in c.n0 as usize + 3..n as usize {
                        assert_eq!(t.entries[i], PairValue::Exact(super::super::l_eval(&c, s, i, a).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_regions_are_exact() {
        for (n, p) in [(4u32, 3u64), (4, 5), (5, 7), (6, 5), (7, 11), (8, 7)] {
            let c = ctx(n, p);
            for s in 1..3 {
                let q = c.q(s).unwrap();
                for a in 0..q {
                    let t = pair_table(&c, s, a).unwrap();
                    let lemma = lemma_computable(&c, s, a).unwrap();
                    for (e, ok) in t.entries.iter().zip(lemma) {
                        assert!(!ok || e.is_exact(), "n={n} p={p} s={s} a={a}");
                    }
                    if c.parity == Parity::Odd {
                        let x = rat(a, q);
                        let h = c.middle_halfwidth();
                        if x < rat(1, 2) - &h || x >= rat(1, 2) + &h {
                            assert!(t.entries.iter().all(PairValue::is_exact));
                        }
                    }
                }
            }
        }
    }
}
