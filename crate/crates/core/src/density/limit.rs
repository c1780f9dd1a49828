//! Limit functions of the Z and L ladders and the characteristic-free density `f^inf`.

use crate::arith::{factorial, int, rat, PiecewisePolynomial, Polynomial, Rational};
use crate::error::{HkqError, Result};
use crate::frobenius::{l_coeffs_int, z_coeffs_int};

fn scale_n(n: u32) -> Rational {
    Rational::new(2.into(), factorial(n))
}

/// `Z_{-i}(x) = (2/n!) sum_j r_ij (x - i + j)^n`, the limit of `Z_{-i}(a)/q^n` at `x = i + a/q`.
pub fn z_limit(n: u32, i: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (j, r) in z_coeffs_int(n, i).into_iter().enumerate() {
        let c0 = rat(j as i64 - i as i64, 1);
        acc = acc + Polynomial::linear_power(&c0, &rat(1, 1), n).scale(&int(r));
    }
    acc.scale(&scale_n(n))
}

/// `L_{-i}(x) = (2/n!) sum_j s_ij (i + 1 + j - x)^n`, for `i <= n-1`.
pub fn l_limit(n: u32, i: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (j, s) in l_coeffs_int(n, i).into_iter().enumerate() {
        let c0 = rat(i as i64 + 1 + j as i64, 1);
        acc = acc + Polynomial::linear_power(&c0, &rat(-1, 1), n).scale(&int(s));
    }
    acc.scale(&scale_n(n))
}

/// `2(n-x)^n/n!`, the density near the end of its support.
pub fn last_piece(n: u32) -> Polynomial {
    Polynomial::linear_power(&rat(n as i64, 1), &rat(-1, 1), n).scale(&scale_n(n))
}

pub(crate) fn require_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(HkqError::OutOfScope(format!("density functions need n >= 3, got n={n}")));
    }
    Ok(())
}

/// `f^inf` as a continuous piecewise polynomial on `[0, n)`.
pub fn f_infinity_pieces(n: u32) -> Result<PiecewisePolynomial> {
    require_n(n)?;
    let n0 = (n as usize).div_ceil(2) - 1;
    let mut bps = Vec::new();
    let mut pieces = Vec::new();
    let top = n as usize;
    if n % 2 == 1 {
        for i in 0..=n0 {
            bps.push(rat(i as i64, 1));
            pieces.push(z_limit(n, i));
        }
        bps.push(rat(n0 as i64 + 1, 1));
        pieces.push(z_limit(n, n0 + 1));
        bps.push(rat(2 * n0 as i64 + 3, 2));
        pieces.push(l_limit(n, n0 + 1));
        for i in n0 + 2..top {
            bps.push(rat(i as i64, 1));
            pieces.push(l_limit(n, i));
        }
    } else {
        for i in 0..=n0 + 1 {
            bps.push(rat(i as i64, 1));
            pieces.push(z_limit(n, i));
        }
        for i in n0 + 2..top {
            bps.push(rat(i as i64, 1));
            pieces.push(l_limit(n, i));
        }
    }
    bps.push(rat(n as i64, 1));
    PiecewisePolynomial::new_continuous(bps, pieces)
}
