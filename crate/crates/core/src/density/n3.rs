//! The `n = 3` density on the middle range, resolved along the p-adic digits.
//!
//! Write `y = x - 2` and `P_j = (1 - p^-j)/2`. The middle interval `[P_1, P_1 + 1/p)`
//! splits as `[P_j, P_{j+1})`, the nested remainder `[P_{j+1}, P_{j+1} + p^-(j+1))`,
//! and `[P_{j+1} + p^-(j+1), P_j + p^-j)`, with a closed form on the two outer parts.

use super::limit::f_infinity_pieces;
use crate::arith::{int, rat, Polynomial, Rational};
use crate::error::{HkqError, Result};
use crate::frobenius::transfer_matrix;
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

/// Hard cap on resolution depth.
pub const MAX_DEPTH: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum N3Value {
    Exact(Rational),
    /// `x` sits in the unresolved remainder at `depth`; the value lies in `[lower, upper]`.
    Enclosed { lower: Rational, upper: Rational, depth: u32 },
}

impl N3Value {
    pub fn lower(&self) -> &Rational {
        match self {
            N3Value::Exact(v) => v,
            N3Value::Enclosed { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            N3Value::Exact(v) => v,
            N3Value::Enclosed { upper, .. } => upper,
        }
    }
}

/// Exact integral of the density over the tree region, resolved to some depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeIntegral {
    pub depth: u32,
    pub lower: Rational,
    pub upper: Rational,
}

/// Constants of the nested-interval description for one prime `p >= 5`.
///
/// The `P_j` are recomputed on demand, so the tree holds no mutable state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N3IntervalTree {
    pub p: u64,
    /// Multiplicity of `S(-1)` in `F_*(O(P0 - 2))`.
    pub mu: BigInt,
    /// Multiplicity of `S(-1)` in `F_*(S(P0 - 1))`.
    pub mu_bar: BigInt,
}

impl N3IntervalTree {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(HkqError::OutOfScope(format!("the n=3 interval tree needs p >= 5, got p={p}")));
        }
        let m = transfer_matrix(p)?;
        Ok(N3IntervalTree { p, mu: m.entries[0][4].clone(), mu_bar: m.entries[4][4].clone() })
    }

    fn p_rat(&self) -> Rational {
        int(self.p)
    }

    /// `p^-j`.
    pub fn width(&self, j: u32) -> Rational {
        self.p_rat().pow(j as i32).recip()
    }

    /// `P_j`, with `P_0 = (p-1)/2`.
    pub fn p_j(&self, j: u32) -> Rational {
        if j == 0 {
            return rat(self.p as i64 - 1, 2);
        }
        (Rational::one() - self.width(j)) / int(2)
    }

    /// `(3 - x)^3 / 3` in the variable `y = x - 2`.
    fn base(&self) -> Polynomial {
        Polynomial::linear_power(&rat(1, 1), &rat(-1, 1), 3).scale(&rat(1, 3))
    }

    /// `(4/3) sum_{i<=j} (p^-i + P_i - y)^3 mu mu_bar^(i-1)`.
    fn s_sum(&self, j: u32) -> Polynomial {
        let mut acc = Polynomial::zero();
        for i in 1..=j {
            let c = int(&self.mu * Pow::pow(&self.mu_bar, i - 1)) * rat(4, 3);
            let t = Polynomial::linear_power(&(self.width(i) + self.p_j(i)), &rat(-1, 1), 3);
            acc = acc + t.scale(&c);
        }
        acc
    }

    /// The correction `[(8/3)t^3 - (4/p^j)t^2 + 2/(3p^3j)] mu_bar^j` with `t = y - P_j`.
    fn g_term(&self, j: u32) -> Polynomial {
        let w = self.width(j);
        let inner = Polynomial::new(vec![&w * &w * &w * rat(2, 3), Rational::zero(), -&w * int(4), rat(8, 3)]);
        inner.shift(&-self.p_j(j)).scale(&int(Pow::pow(&self.mu_bar, j)))
    }

    /// `(mu_bar/p^3)^j`.
    fn ratio_pow(&self, j: u32) -> Rational {
        let r: Rational = int(self.mu_bar.clone()) / int(self.p).pow(3);
        r.pow(j as i32)
    }

    /// Slack above `base + S_J` on the remainder at depth `J`.
    ///
    /// Past `P_J` each later correction `G_m` is at most `(2/3) r^m` and each
    /// later `S` term at most `(4/3) mu mu_bar^(m-1) p^(-3m)`, where `r = mu_bar/p^3 < 1/8`.
    /// Summing the geometric tails gives less than `2 r^J`.
    fn tail(&self, depth: u32) -> Rational {
        self.ratio_pow(depth) * int(2)
    }

    /// Density at `x`, exact unless `x` lies beyond `depth` levels of the tree.
    pub fn eval(&self, x: &Rational, depth: u32) -> Result<N3Value> {
        if depth == 0 || depth > MAX_DEPTH {
            return Err(HkqError::InvalidParameter(format!("depth must lie in [1, {MAX_DEPTH}], got {depth}")));
        }
        if x < &Rational::zero() {
            return Err(HkqError::InvalidParameter(format!("x={x} is negative")));
        }
        let y = x - int(2);
        let p1 = self.p_j(1);
        if y < p1 || y >= &p1 + self.width(1) {
            return Ok(N3Value::Exact(f_infinity_pieces(3)?.eval(x)));
        }
        for j in 1..=depth {
            let (pj, pj1) = (self.p_j(j), self.p_j(j + 1));
            if y >= pj && y < pj1 {
                let f = self.base() + self.s_sum(j) + self.g_term(j);
                return Ok(N3Value::Exact(f.eval(&y)));
            }
            if y >= &pj1 + self.width(j + 1) && y < &pj + self.width(j) {
                return Ok(N3Value::Exact((self.base() + self.s_sum(j)).eval(&y)));
            }
        }
        let lower = (self.base() + self.s_sum(depth + 1)).eval(&y);
        let upper = &lower + self.tail(depth + 1);
        Ok(N3Value::Enclosed { lower, upper, depth })
    }

    /// Integral over `[2 + P_1, 2 + P_1 + 1/p)` resolved to `depth` levels.
    pub fn integrate_middle(&self, depth: u32) -> Result<TreeIntegral> {
        if depth == 0 || depth > MAX_DEPTH {
            return Err(HkqError::InvalidParameter(format!("depth must lie in [1, {MAX_DEPTH}], got {depth}")));
        }
        let mut exact = Rational::zero();
        for j in 1..=depth {
            let (pj, pj1) = (self.p_j(j), self.p_j(j + 1));
            let s = self.base() + self.s_sum(j);
            exact += (&s + &self.g_term(j)).definite_integral(&pj, &pj1);
            exact += s.definite_integral(&(&pj1 + self.width(j + 1)), &(&pj + self.width(j)));
        }
        let lo = self.p_j(depth + 1);
        let w = self.width(depth + 1);
        let rest = (self.base() + self.s_sum(depth + 1)).definite_integral(&lo, &(&lo + &w));
        let lower = &exact + rest;
        let upper = &lower + w * self.tail(depth + 1);
        Ok(TreeIntegral { depth, lower, upper })
    }
}

/// `f` for `n = 3` at `x`, see [`N3IntervalTree::eval`].
pub fn f_n3_at(p: u64, x: &Rational, depth: u32) -> Result<N3Value> {
    N3IntervalTree::new(p)?.eval(x, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{decompose_s1, graded_length, QuadricContext, Source};
    use proptest::prelude::*;

    fn exact(v: N3Value) -> Rational {
        match v {
            N3Value::Exact(v) => v,
            other => panic!("expected an exact value, got {other:?}"),
        }
    }

    #[test]
    fn constants() {
        for p in [5u64, 7, 11, 13] {
            let t = N3IntervalTree::new(p).unwrap();
            let ctx = QuadricContext::new(3, p).unwrap();
            let p0 = (p as i64 - 1) / 2;
            let mu = decompose_s1(&ctx, p0 - 2, Source::O).unwrap().mu_at(-1);
            let mu_bar = decompose_s1(&ctx, p0 - 1, Source::S).unwrap().mu_at(-1);
            assert_eq!(t.mu, mu);
            assert_eq!(t.mu_bar, mu_bar);
            assert_eq!(t.mu, BigInt::from((p * p - 1) / 2));
            assert_eq!(t.mu_bar, &t.mu + 1);
        }
        assert!(matches!(N3IntervalTree::new(3), Err(HkqError::OutOfScope(_))));
    }

    #[test]
    fn chain_is_nested() {
        let t = N3IntervalTree::new(7).unwrap();
        let half = rat(1, 2);
        for j in 1..8 {
            assert!(t.p_j(j) < t.p_j(j + 1) && t.p_j(j + 1) < half);
            let right = |k| t.p_j(k) + t.width(k);
            assert!(half < right(j + 1) && right(j + 1) < right(j));
        }
    }

    #[test]
    fn examples() {
        assert_eq!(exact(f_n3_at(5, &rat(1, 2), 4).unwrap()), rat(1, 24));
        let x = rat(11, 5);
        let v = exact(f_n3_at(5, &x, 4).unwrap());
        let x1 = &x - int(1);
        let x2 = &x - int(2);
        let want = (x.pow(3) - int(5) * x1.pow(3) + int(11) * x2.pow(3)) / int(3);
        assert_eq!(v, want);
        let v = exact(f_n3_at(5, &rat(3, 1), 4).unwrap());
        assert_eq!(v, Rational::zero());
    }

    #[test]
    fn continuous_at_every_boundary() {
        for p in [5u64, 7] {
            let t = N3IntervalTree::new(p).unwrap();
            let f3 = f_infinity_pieces(3).unwrap();
            let left_of_root = &f3.pieces()[2];
            let root = t.p_j(1) + int(2);
            let depth = 6;
            assert_eq!(exact(t.eval(&root, depth).unwrap()), left_of_root.eval(&root));
            let right_end = &root + t.width(1);
            assert_eq!(exact(t.eval(&right_end, depth).unwrap()), f3.pieces()[3].eval(&right_end));
            let y = |j: u32| -> Polynomial { t.base() + t.s_sum(j) };
            for j in 1..depth {
                let gj = y(j) + t.g_term(j);
                let a = t.p_j(j + 1);
                assert_eq!(gj.eval(&a), (y(j + 1) + t.g_term(j + 1)).eval(&a), "p={p} j={j} left");
                let b = &a + t.width(j + 1);
                assert_eq!(y(j).eval(&b), y(j + 1).eval(&b), "p={p} j={j} right");
            }
        }
    }

    #[test]
    fn matches_finite_levels() {
        // l(R/m^[q])_{xq} / q^3 = f(x) + c/q + O(1/q^2); one Richardson step
        // removes the 1/q term.
        let p = 5u64;
        let ctx = QuadricContext::new(3, p).unwrap();
        let t = N3IntervalTree::new(p).unwrap();
        let scaled = |m: i64, s: u32| {
            let q = p.pow(s) as i64;
            int(graded_length(&ctx, s, m * q / 25).unwrap().lo().clone()) / int(q).pow(3)
        };
        for m in [12i64, 30, 52, 56, 60, 61, 62, 63, 64, 65, 70] {
            let f = exact(t.eval(&rat(m, 25), 8).unwrap());
            let (a, b) = (scaled(m, 4), scaled(m, 5));
            let est: Rational = (b * int(p) - a) / int(p - 1);
            let err = num_traits::Signed::abs(&(est - &f));
            assert!(err < rat(1, 10_000), "m={m} err={err}");
        }
    }

    proptest! {
        #[test]
        fn enclosure_contains_deeper_values(num in 0i64..10_000, p_idx in 0usize..3, depth in 1u32..4) {
            let p = [5u64, 7, 11][p_idx];
            let t = N3IntervalTree::new(p).unwrap();
            let y = t.p_j(1) + t.width(1) * rat(num, 10_000);
            let x = &y + int(2);
            let shallow = t.eval(&x, depth).unwrap();
            let deep = t.eval(&x, depth + 6).unwrap();
            prop_assert!(shallow.lower() <= deep.lower());
            prop_assert!(deep.upper() <= shallow.upper());
            prop_assert!(deep.lower() <= deep.upper());
        }

        #[test]
        fn never_below_the_limit_density(num in 0i64..10_000, p_idx in 0usize..3) {
            let p = [5u64, 7, 11][p_idx];
            let t = N3IntervalTree::new(p).unwrap();
            let x = t.p_j(1) + int(2) + t.width(1) * rat(num, 10_000);
            let v = t.eval(&x, 12).unwrap();
            prop_assert!(v.lower() >= &f_infinity_pieces(3).unwrap().eval(&x));
        }
    }
}
