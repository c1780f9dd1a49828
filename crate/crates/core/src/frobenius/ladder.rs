//! The Z ladder (from global sections) and the L ladder (from top cohomology).
//!
//! Both are integer combinations of `Y_m`: `Z_{-i}(a) = sum_j r_ij Y_{a+jq}` and
//! `L_{-i}(a) = sum_j s_ij Y_{(j+1)q-a-n}`, with coefficients depending only on `n`.

use super::QuadricContext;
use crate::arith::{dim_quadric, int, Rational};
use crate::error::{HkqError, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer coefficients `[r_i0, .., r_i(i-1), 1]` of `Z_{-i}`.
pub fn z_coeffs_int(n: u32, i: usize) -> Vec<BigInt> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(i + 1);
    for k in 0..=i {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        for t in 1..=k {
            let y = dim_quadric(n, t as i64);
            for (j, v) in rows[k - t].iter().enumerate() {
                c[j] -= &y * v;
            }
        }
        rows.push(c);
    }
    rows.pop().unwrap()
}

/// Integer coefficients `[s_i0, .., 1]` of `L_{-i}`, for `i <= n-1`.
pub fn l_coeffs_int(n: u32, i: usize) -> Vec<BigInt> {
    let top = n as usize - 1;
    assert!(i <= top, "L ladder index {i} exceeds n-1");
    // rows[k] holds L_{-(top - k)}, i.e. the list grows from the base case downwards in i.
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for k in (i..=top).rev() {
        let len = n as usize - k;
        let mut c = vec![BigInt::zero(); len];
        c[len - 1] = BigInt::one();
        for t in 1..len {
            let y = dim_quadric(n, t as i64);
            for (j, v) in rows[top - (k + t)].iter().enumerate() {
                c[j] -= &y * v;
            }
        }
        rows.push(c);
    }
    rows.pop().unwrap()
}

fn to_rational(v: Vec<BigInt>) -> Vec<Rational> {
    v.into_iter().map(int).collect()
}

/// Coefficients of `Z_{-i}` for `0 <= i <= n-1`.
pub fn z_coefficients(ctx: &QuadricContext, i: usize) -> Result<Vec<Rational>> {
    if i >= ctx.n as usize {
        return Err(HkqError::InvalidParameter(format!("Z ladder index {i} outside [0, {}]", ctx.n - 1)));
    }
    Ok(to_rational(z_coeffs_int(ctx.n, i)))
}

/// Coefficients of `L_{-i}` for `n0+1 <= i <= n-1`.
pub fn l_coefficients(ctx: &QuadricContext, i: usize) -> Result<Vec<Rational>> {
    check_l_index(ctx, i)?;
    Ok(to_rational(l_coeffs_int(ctx.n, i)))
}

fn check_l_index(ctx: &QuadricContext, i: usize) -> Result<()> {
    if (i as i64) <= ctx.n0 || i >= ctx.n as usize {
        return Err(HkqError::InvalidParameter(format!(
            "L ladder index {i} outside [{}, {}]",
            ctx.n0 + 1,
            ctx.n - 1
        )));
    }
    Ok(())
}

fn check_residue(ctx: &QuadricContext, s: u32, a: i64) -> Result<i64> {
    let q = ctx.q(s)?;
    if !(0..q).contains(&a) {
        return Err(HkqError::InvalidParameter(format!("a={a} outside [0, {q})")));
    }
    Ok(q)
}

/// `Z^s_{-i}(a)`.
pub fn z_eval(ctx: &QuadricContext, s: u32, i: usize, a: i64) -> Result<BigInt> {
    let q = check_residue(ctx, s, a)?;
    if i >= ctx.n as usize {
        return Err(HkqError::InvalidParameter(format!("Z ladder index {i} outside [0, {}]", ctx.n - 1)));
    }
    Ok(z_coeffs_int(ctx.n, i)
        .iter()
        .enumerate()
        .map(|(j, r)| r * ctx.y(a + j as i64 * q))
        .sum())
}

/// `L^s_{-i}(a)`.
pub fn l_eval(ctx: &QuadricContext, s: u32, i: usize, a: i64) -> Result<BigInt> {
    let q = check_residue(ctx, s, a)?;
    check_l_index(ctx, i)?;
    Ok(l_coeffs_int(ctx.n, i)
        .iter()
        .enumerate()
        .map(|(j, c)| c * ctx.y((j as i64 + 1) * q - a - ctx.n as i64))
        .sum())
}
