//! Colengths from Jordan types.
//!
//! With `t_i = x_i^2`, `k[x_i]/(x_i^q)` is `k[t]/t^((q+1)/2)` plus `x_i k[t]/t^((q-1)/2)`
//! as a `k[t_i]`-module. The quotient by `u = t_0 + .. + t_{n+1}` has one basis
//! element per Jordan block of `u` on the tensor product, in the degree of the
//! block's generator. Jordan types of `u1 + u2` on a tensor product are found
//! one pair at a time with a graded Smith form over `F_p[u]`.

use super::gfp::{binomial_mod, inverse_mod};
use crate::error::{HkqError, Result};
use crate::frobenius::{check_prime, power};
use std::collections::{BTreeMap, HashMap};

/// Jordan blocks of `t1 + t2` on `k[t1]/t1^a (x) k[t2]/t2^b`, as `(length, generator degree) -> count`.
///
/// As a `k[u]`-module the product is generated by `t2^j`, `j < b`, with
/// relations `t2^i (u - t2)^a`. Entry `(i, j)` of that `b x b` relation matrix is
/// `(-1)^{j-i} C(a, j-i) u^{a+i-j}`, so every entry's degree is fixed by its
/// position and the Smith form reduces to scalar elimination, pivoting on the
/// lowest available degree.
pub fn pair_blocks(a: usize, b: usize, p: u64) -> BTreeMap<(usize, usize), u128> {
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    let mut m = vec![vec![0u64; b]; b];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate().skip(i) {
            let l = j - i;
            if l <= a {
                let c = binomial_mod(a as u64, l as u64, p);
                *v = if l % 2 == 0 { c } else { (p - c) % p };
            }
        }
    }
    let mut row_alive = vec![true; b];
    let mut col_alive = vec![true; b];
    let mut out = BTreeMap::new();
    for _ in 0..b {
        // Lowest degree a + i - j among live nonzero entries; ties broken by position.
        let mut best: Option<(i64, usize, usize)> = None;
        for i in (0..b).filter(|&i| row_alive[i]) {
            for j in (0..b).filter(|&j| col_alive[j]) {
                if m[i][j] != 0 {
                    let deg = a as i64 + i as i64 - j as i64;
                    if best.is_none_or(|(bd, _, _)| deg < bd) {
                        best = Some((deg, i, j));
                    }
                }
            }
        }
        let (deg, r, c) = best.expect("relation matrix over k[u] has full rank");
        if deg > 0 {
            *out.entry((deg as usize, c)).or_insert(0) += 1;
        }
        row_alive[r] = false;
        col_alive[c] = false;
        let inv = inverse_mod(m[r][c], p);
        let pivot_row: Vec<u64> = m[r].clone();
        for i in (0..b).filter(|&i| row_alive[i]) {
            let f = m[i][c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in (0..b).filter(|&j| col_alive[j]) {
                m[i][j] = (m[i][j] + (p - f) * pivot_row[j]) % p;
            }
            m[i][c] = 0;
        }
    }
    out
}

/// Every graded colength `l(R/m^[q])_d`, indexed by `d`, for `n >= 1`.
pub fn graded_lengths_tensor(n: u32, p: u64, s: u32, ceiling: usize) -> Result<Vec<u128>> {
    check_prime(p)?;
    let q = power(p, s)? as usize;
    let side = q.div_ceil(2);
    if side > ceiling {
        return Err(HkqError::ResourceCeiling(format!(
            "pair matrices of side {side} exceed the ceiling {ceiling} (set HKQ_CEILING to raise it)"
        )));
    }
    let var: [((usize, usize), u128); 2] = [((q.div_ceil(2), 0), 1), (((q - 1) / 2, 1), 1)];
    let mut module: BTreeMap<(usize, usize), u128> = var.iter().cloned().collect();
    let mut memo: HashMap<(usize, usize), BTreeMap<(usize, usize), u128>> = HashMap::new();
    for _ in 0..n + 1 {
        let mut next: BTreeMap<(usize, usize), u128> = BTreeMap::new();
        for (&(l1, s1), &c1) in &module {
            for &((l2, s2), c2) in &var {
                let key = (l1.max(l2), l1.min(l2));
                let blocks = memo.entry(key).or_insert_with(|| pair_blocks(key.0, key.1, p));
                for (&(len, start), &c) in blocks.iter() {
                    *next.entry((len, s1 + s2 + 2 * start)).or_insert(0) += c * c1 * c2;
                }
            }
        }
        module = next;
    }
    let top = module.keys().map(|&(_, sh)| sh).max().unwrap_or(0);
    let mut out = vec![0u128; top + 1];
    for ((_, sh), c) in module {
        out[sh] += c;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}
