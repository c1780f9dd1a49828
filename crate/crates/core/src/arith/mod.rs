//! Exact scalars, binomials, graded dimension counters and sec+tan coefficients.

mod piecewise;
mod poly;

pub use piecewise::{integrate, PiecewisePolynomial};
pub use poly::Polynomial;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// `C(m, k)`, taken to be 0 whenever `m < k` (including every negative `m`).
pub fn binomial(m: i64, k: u32) -> BigInt {
    if m < k as i64 {
        return BigInt::zero();
    }
    let k = k.min((m - k as i64) as u32) as i64;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * i)
}

/// `h^0(P^N, O(m)) = C(m+N, N)`, zero in negative degree.
pub fn dim_projective(big_n: u32, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    binomial(m + big_n as i64, big_n)
}

/// `Y_m = h^0(Q_n, O(m))`, the degree-m piece of the quadric's coordinate ring.
pub fn dim_quadric(n: u32, m: i64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    binomial(m + n as i64 + 1, n + 1) - binomial(m + n as i64 - 1, n + 1)
}

/// Rank of the spinor bundle on `Q_n`.
pub fn spinor_rank(n: u32) -> u64 {
    1u64 << (n / 2)
}

/// `h^0(Q_n, S(m)) = 2 rk(S) (X_{m-1} - X_{m-2})` with X over `P^{n+1}`.
pub fn dim_spinor(n: u32, m: i64) -> BigInt {
    if m <= 0 {
        return BigInt::zero();
    }
    let two_l0 = BigInt::from(2 * spinor_rank(n));
    two_l0 * (dim_projective(n + 1, m - 1) - dim_projective(n + 1, m - 2))
}

/// Zigzag numbers `A_0..=A_d` from the boustrophedon triangle.
pub fn zigzag_numbers(d: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for k in 1..=d as usize {
        let mut next = Vec::with_capacity(k + 1);
        next.push(BigInt::zero());
        for j in 1..=k {
            let v = &next[j - 1] + &row[k - j];
            next.push(v);
        }
        out.push(next[k].clone());
        row = next;
    }
    out
}

/// Coefficient of `x^d` in `sec x + tan x`.
pub fn sec_tan_coefficient(d: u32) -> Rational {
    let a = zigzag_numbers(d).pop().unwrap();
    Rational::new(a, factorial(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 4), big(1));
        assert_eq!(binomial(14, 4), big(1001));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(binomial(-3, 2), big(0));
    }

    #[test]
    fn projective_examples() {
        assert_eq!(dim_projective(4, 0), big(1));
        assert_eq!(dim_projective(4, 10), big(1001));
        assert_eq!(dim_projective(4, -1), big(0));
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(dim_quadric(3, 1), big(5));
        assert_eq!(dim_quadric(3, 2), big(14));
        assert_eq!(dim_quadric(3, -2), big(0));
        assert_eq!(dim_quadric(4, 1), big(6));
    }

    #[test]
    fn spinor_examples() {
        assert_eq!(dim_spinor(3, 1), big(4));
        assert_eq!(dim_spinor(3, 6), big(224));
        assert_eq!(dim_spinor(3, 0), big(0));
        assert_eq!(spinor_rank(3), 2);
        assert_eq!(spinor_rank(4), 4);
    }

    // Independent check: invert the cosine series and add the tangent series,
    // all by truncated power-series arithmetic over the rationals.
    fn sec_plus_tan_series(len: usize) -> Vec<Rational> {
        let mut cos = vec![Rational::zero(); len];
        let mut sin = vec![Rational::zero(); len];
        for k in 0..len {
            let c = Rational::new(BigInt::one(), factorial(k as u32));
            let sign = if (k / 2) % 2 == 0 { c.clone() } else { -c.clone() };
            if k % 2 == 0 {
                cos[k] = sign;
            } else {
                sin[k] = sign;
            }
        }
        let mut sec = vec![Rational::zero(); len];
        for k in 0..len {
            let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
            for j in 1..=k {
                acc -= &cos[j] * &sec[k - j];
            }
            sec[k] = acc;
        }
        let mut tan = vec![Rational::zero(); len];
        for k in 0..len {
            let mut acc = sin[k].clone();
            for j in 1..=k {
                acc -= &cos[j] * &tan[k - j];
            }
            tan[k] = acc;
        }
        sec.iter().zip(&tan).map(|(a, b)| a + b).collect()
    }

    #[test]
    fn sec_tan_matches_series_oracle() {
        assert_eq!(sec_tan_coefficient(1), rat(1, 1));
        assert_eq!(sec_tan_coefficient(2), rat(1, 2));
        assert_eq!(sec_tan_coefficient(4), rat(5, 24));
        assert_eq!(sec_tan_coefficient(6), rat(61, 720));
        let series = sec_plus_tan_series(22);
        for d in 1..22u32 {
            assert_eq!(sec_tan_coefficient(d), series[d as usize], "d={d}");
        }
    }

    proptest! {
        #[test]
        fn quadric_cubic_closed_form(m in 0i64..400) {
            let cubic = (2 * m * m * m + 9 * m * m + 13 * m + 6) / 6;
            prop_assert_eq!(dim_quadric(3, m), big(cubic));
        }

        #[test]
        fn quadric_is_restriction(n in 3u32..12, m in 1i64..200) {
            prop_assert_eq!(
                dim_quadric(n, m),
                dim_projective(n + 1, m) - dim_projective(n + 1, m - 2)
            );
        }

        #[test]
        fn zigzag_integrality(d in 1u32..=20) {
            let scaled = sec_tan_coefficient(d) * int(factorial(d));
            prop_assert!(scaled.is_integer());
            prop_assert!(scaled > Rational::zero());
        }

        #[test]
        fn binomial_pascal(m in 1i64..300, k in 1u32..40) {
            prop_assert_eq!(binomial(m, k), binomial(m - 1, k - 1) + binomial(m - 1, k));
        }
    }
}
