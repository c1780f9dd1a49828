//! Degree-d Macaulay matrix of `(x_0^2 + .. + x_{n+1}^2, x_0^q, .., x_{n+1}^q)`.
//!
//! The rows `x_i^q * m` are unit vectors, so pivoting on them first simply
//! deletes every column with an exponent `>= q`. What remains splits into
//! blocks by the parity pattern of the exponents, since multiplying by
//! `x_i^2` preserves it. Each block is eliminated densely over `F_p`.

use super::gfp::DenseMatrix;
use crate::arith::binomial;
use crate::error::{HkqError, Result};
use crate::frobenius::{check_prime, power};
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};

/// Size data for one Macaulay matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayInstance {
    pub n: u32,
    pub p: u64,
    pub q: u64,
    pub d: u64,
    /// All monomials of degree `d` in `n+2` variables.
    pub column_count: BigInt,
    /// Cofactor rows: one per monomial of degree `d-2`, and per `i` one per monomial of degree `d-q`.
    pub row_count: BigInt,
    /// Columns surviving the unit-row pivots.
    pub reduced_columns: u128,
    /// Largest dense block side (rows or columns) after the parity split.
    pub largest_block: u128,
}

/// Calls `f` on every exponent vector of length `nvars`, total degree `d`,
/// entries below `bound`, in lexicographic order.
pub fn for_each_monomial(nvars: usize, d: u64, bound: u64, mut f: impl FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, left: usize, d: u64, bound: u64, f: &mut dyn FnMut(&[u32])) {
        if left == 1 {
            if d < bound {
                buf.push(d as u32);
                f(buf);
                buf.pop();
            }
            return;
        }
        // Remaining variables can absorb at most (left-1)(bound-1).
        let cap = (left as u64 - 1) * (bound - 1);
        let lo = d.saturating_sub(cap);
        let hi = d.min(bound - 1);
        for e in (lo..=hi).rev() {
            buf.push(e as u32);
            rec(buf, left - 1, d - e, bound, f);
            buf.pop();
        }
    }
    if nvars == 0 {
        if d == 0 {
            f(&[]);
        }
        return;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, d, bound, &mut f);
}

/// Coefficients of `A^{N-w} B^w` where `A`, `B` enumerate the even and odd exponents below `q`.
///
/// Each factor is a run of stride-2 ones, so multiplying by it is a sliding window sum.
fn parity_counts(nvars: usize, q: u64) -> Vec<Vec<u128>> {
    let deg = nvars * (q as usize - 1);
    let q = q as usize;
    // Multiply by x^offset * (1 + x^2 + .. + x^{2(len-1)}).
    let window = |x: &[u128], offset: usize, len: usize| {
        let mut run = vec![0u128; deg + 1];
        for k in 0..=deg {
            let mut v = x[k];
            if k >= 2 {
                v += run[k - 2];
            }
            if k >= 2 * len {
                v -= x[k - 2 * len];
            }
            run[k] = v;
        }
        let mut out = vec![0u128; deg + 1];
        out[offset..].copy_from_slice(&run[..=deg - offset]);
        out
    };
    let mut one = vec![0u128; deg + 1];
    one[0] = 1;
    (0..=nvars)
        .map(|w| {
            let mut acc = one.clone();
            for _ in 0..nvars - w {
                acc = window(&acc, 0, q.div_ceil(2));
            }
            for _ in 0..w {
                acc = window(&acc, 1, q / 2);
            }
            acc
        })
        .collect()
}

/// Reduced column count and largest block side in degree `d`.
fn block_profile(counts: &[Vec<u128>], d: i64) -> (u128, u128) {
    let nv = counts.len() - 1;
    let at = |w: usize, k: i64| -> u128 {
        if k < 0 || k as usize >= counts[w].len() {
            0
        } else {
            counts[w][k as usize]
        }
    };
    let mut reduced_columns = 0u128;
    let mut largest_block = 0u128;
    for w in 0..=nv {
        let classes: u128 = binomial(nv as i64, w as u32).try_into().unwrap();
        let cols = at(w, d);
        reduced_columns += classes * cols;
        if cols > 0 {
            largest_block = largest_block.max(cols).max(at(w, d - 2));
        }
    }
    (reduced_columns, largest_block)
}

/// Largest dense block side for every degree `0..=(n+2)(q-1)`.
pub fn largest_blocks(n: u32, p: u64, s: u32) -> Result<Vec<u128>> {
    check_prime(p)?;
    let q = power(p, s)? as u64;
    if q > 1 << 20 {
        return Err(HkqError::ResourceCeiling(format!("q={q} is too large for the Macaulay route")));
    }
    let nv = n as usize + 2;
    let counts = parity_counts(nv, q);
    Ok((0..=(nv as i64) * (q as i64 - 1)).map(|d| block_profile(&counts, d).1).collect())
}

impl MacaulayInstance {
    pub fn new(n: u32, p: u64, s: u32, d: u64) -> Result<Self> {
        check_prime(p)?;
        let q = power(p, s)? as u64;
        let nv = n as usize + 2;
        if q > 1 << 20 {
            return Err(HkqError::ResourceCeiling(format!("q={q} is too large for the Macaulay route")));
        }
        let big_n = n + 1;
        let dd = d as i64;
        let column_count = binomial(dd + big_n as i64, big_n);
        let row_count =
            binomial(dd - 2 + big_n as i64, big_n) + BigInt::from(nv) * binomial(dd - q as i64 + big_n as i64, big_n);
        let (reduced_columns, largest_block) = block_profile(&parity_counts(nv, q), dd);
        Ok(MacaulayInstance { n, p, q, d, column_count, row_count, reduced_columns, largest_block })
    }

    /// Corank of the matrix, i.e. the graded colength, ignoring any ceiling.
    pub fn graded_length(&self) -> u128 {
        let nv = self.n as usize + 2;
        let mask = |m: &[u32]| m.iter().enumerate().fold(0u64, |acc, (i, e)| acc | (((e & 1) as u64) << i));
        let mut cols: BTreeMap<u64, Vec<Vec<u32>>> = BTreeMap::new();
        for_each_monomial(nv, self.d, self.q, |m| cols.entry(mask(m)).or_default().push(m.to_vec()));
        let mut rows: BTreeMap<u64, Vec<Vec<u32>>> = BTreeMap::new();
        if self.d >= 2 {
            for_each_monomial(nv, self.d - 2, self.q, |m| rows.entry(mask(m)).or_default().push(m.to_vec()));
        }
        let mut corank = 0u128;
        for (k, block_cols) in &cols {
            let block_rows = rows.get(k).map(Vec::as_slice).unwrap_or(&[]);
            let index: HashMap<&[u32], usize> =
                block_cols.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
            let mut mat = DenseMatrix::zeros(block_rows.len(), block_cols.len());
            let mut target = vec![0u32; nv];
            for (r, m) in block_rows.iter().enumerate() {
                for i in 0..nv {
                    if (m[i] as u64) + 2 >= self.q {
                        continue;
                    }
                    target.copy_from_slice(m);
                    target[i] += 2;
                    let c = index[target.as_slice()];
                    mat.set(r, c, 1);
                }
            }
            let rank = mat.rank_mod(self.p as u32);
            corank += (block_cols.len() - rank) as u128;
        }
        corank
    }
}

/// Colength in degree `d` by elimination, refusing blocks above `ceiling`.
pub fn graded_length_macaulay(n: u32, p: u64, s: u32, d: u64, ceiling: usize) -> Result<u128> {
    let inst = MacaulayInstance::new(n, p, s, d)?;
    if inst.largest_block > ceiling as u128 {
        return Err(HkqError::ResourceCeiling(format!(
            "degree {d}: dense block of side {} exceeds the ceiling {ceiling} (set HKQ_CEILING to raise it)",
            inst.largest_block
        )));
    }
    Ok(inst.graded_length())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unreduced Macaulay matrix with every cofactor row, for tiny cases.
    fn naive(n: u32, p: u64, q: u64, d: u64) -> u128 {
        let nv = n as usize + 2;
        let mut cols = Vec::new();
        for_each_monomial(nv, d, d + 1, |m| cols.push(m.to_vec()));
        let index: HashMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        if d >= 2 {
            for_each_monomial(nv, d - 2, d - 1, |m| {
                let mut r = vec![0u32; cols.len()];
                for i in 0..nv {
                    let mut t = m.to_vec();
                    t[i] += 2;
                    r[index[&t]] += 1;
                }
                rows.push(r);
            });
        }
        if d >= q {
            for_each_monomial(nv, d - q, d - q + 1, |m| {
                for i in 0..nv {
                    let mut r = vec![0u32; cols.len()];
                    let mut t = m.to_vec();
                    t[i] += q as u32;
                    r[index[&t]] = 1;
                    rows.push(r);
                }
            });
        }
        let mut mat = DenseMatrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                mat.set(i, j, v % p as u32);
            }
        }
        (cols.len() - mat.rank_mod(p as u32)) as u128
    }

    #[test]
    fn structured_matches_naive() {
        for (n, p, top) in [(1u32, 3u64, 8u64), (2, 3, 10), (3, 3, 12), (1, 5, 14), (3, 5, 11)] {
            for d in 0..top {
                let inst = MacaulayInstance::new(n, p, 1, d).unwrap();
                assert_eq!(inst.graded_length(), naive(n, p, p, d), "n={n} p={p} d={d}");
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(graded_length_macaulay(3, 5, 1, 0, 2048).unwrap(), 1);
        assert_eq!(graded_length_macaulay(3, 5, 1, 1, 2048).unwrap(), 5);
        assert_eq!(graded_length_macaulay(3, 5, 1, 10, 2048).unwrap(), 62);
        assert_eq!(graded_length_macaulay(3, 5, 1, 15, 2048).unwrap(), 0);
    }

    #[test]
    fn metadata() {
        let inst = MacaulayInstance::new(3, 5, 1, 4).unwrap();
        assert_eq!(inst.column_count, BigInt::from(70));
        assert_eq!(inst.row_count, BigInt::from(15));
        let mut cnt = 0u128;
        for_each_monomial(5, 4, 5, |_| cnt += 1);
        assert_eq!(inst.reduced_columns, cnt);
        assert!(matches!(graded_length_macaulay(3, 5, 2, 30, 10), Err(HkqError::ResourceCeiling(_))));
    }

    #[test]
    fn parity_counts_match_enumeration() {
        for (nv, q) in [(3usize, 3u64), (4, 5), (5, 7), (3, 9)] {
            let counts = parity_counts(nv, q);
            for d in 0..=(nv as u64) * (q - 1) {
                let mut by_weight = vec![0u128; nv + 1];
                for_each_monomial(nv, d, q, |m| by_weight[m.iter().filter(|e| *e % 2 == 1).count()] += 1);
                for w in 0..=nv {
                    let classes: u128 = binomial(nv as i64, w as u32).try_into().unwrap();
                    assert_eq!(classes * counts[w][d as usize], by_weight[w], "nv={nv} q={q} d={d} w={w}");
                }
            }
        }
    }

    #[test]
    fn lexicographic_order() {
        let mut seen = Vec::new();
        for_each_monomial(3, 2, 3, |m| seen.push(m.to_vec()));
        let mut sorted = seen.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(seen, sorted);
        assert_eq!(seen.len(), 6);
    }
}
