//! Density profiles for a fixed `n`, either at a prime `p` or in the limit `p -> inf`.

use super::limit::{f_infinity_pieces, l_limit, require_n, z_limit};
use super::n3::{N3IntervalTree, N3Value};
use crate::arith::{int, rat, PiecewisePolynomial, Polynomial, Rational};
use crate::error::Result;
use crate::frobenius::{Parity, QuadricContext};
use num_traits::Zero;

/// Depth used by [`DensityProfile::eval`] on the `n = 3` tree.
pub const DEFAULT_DEPTH: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityValue {
    Exact(Rational),
    /// The true value lies in `[lower, upper]`.
    Bracket { lower: Rational, upper: Rational },
}

impl DensityValue {
    pub fn lower(&self) -> &Rational {
        match self {
            DensityValue::Exact(v) => v,
            DensityValue::Bracket { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            DensityValue::Exact(v) => v,
            DensityValue::Bracket { upper, .. } => upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DensityValue::Exact(_))
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lower() <= v && v <= self.upper()
    }
}

/// One interval of the range where two spinor twists can coexist.
///
/// On `[start, end)` with entry `i = floor(x)` the density lies between
/// `max(Z_{-i}(x), L_{-i}(x))` and `L_{-i}(x) + L_{-(i-1)}(x-1)`: the feasible
/// range of the spinor multiplicity in the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddlePiece {
    pub start: Rational,
    pub end: Rational,
    pub entry: usize,
    pub z_form: Polynomial,
    pub l_form: Polynomial,
    pub upper: Polynomial,
}

impl MiddlePiece {
    fn new(n: u32, start: Rational, end: Rational, entry: usize) -> Self {
        let z_form = z_limit(n, entry);
        let l_form = l_limit(n, entry);
        let upper = &l_form + &l_limit(n, entry - 1).shift(&rat(-1, 1));
        MiddlePiece { start, end, entry, z_form, l_form, upper }
    }

    pub fn lower_at(&self, x: &Rational) -> Rational {
        self.z_form.eval(x).max(self.l_form.eval(x))
    }

    pub fn upper_at(&self, x: &Rational) -> Rational {
        self.upper.eval(x)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.start <= x && x < &self.end
    }
}

/// `[(n+2)/2 - (n-2)/2p, (n+2)/2 + (n-2)/2p)`, split at its midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifficultRange {
    pub lo: Rational,
    pub hi: Rational,
    pub pieces: Vec<MiddlePiece>,
}

impl DifficultRange {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    fn piece(&self, x: &Rational) -> Option<&MiddlePiece> {
        self.pieces.iter().find(|m| m.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityProfile {
    pub n: u32,
    /// `None` for the limit `p -> inf`.
    pub p: Option<u64>,
    /// Exact on `[0, n)` outside the difficult range. Inside it each piece is
    /// the ladder term of the nearer side, a lower bound for the density.
    pub closed_form: PiecewisePolynomial,
    pub difficult_range: Option<DifficultRange>,
    pub n3_tree: Option<N3IntervalTree>,
}

/// `f^inf` for `n >= 3`.
pub fn f_infinity(n: u32) -> Result<DensityProfile> {
    Ok(DensityProfile { n, p: None, closed_form: f_infinity_pieces(n)?, difficult_range: None, n3_tree: None })
}

/// The density `f_{R_p}` for `n, p` inside the closed-form range.
pub fn f_p(n: u32, p: u64) -> Result<DensityProfile> {
    require_n(n)?;
    let ctx = QuadricContext::new(n, p)?;
    ctx.require_closed_form()?;
    let n0 = ctx.n0 as usize;
    let h = ctx.middle_halfwidth();
    let centre = rat(n as i64 + 2, 2);
    let (lo, hi) = (&centre - &h, &centre + &h);
    let r = |v: usize| int(v as u64);

    let mut bps = Vec::new();
    let mut pieces = Vec::new();
    let mut push = |b: Rational, f: Polynomial| {
        bps.push(b);
        pieces.push(f);
    };
    for i in 0..=n0 {
        push(r(i), z_limit(n, i));
    }
    let middle = match ctx.parity {
        Parity::Odd => {
            // entry n0+1 throughout; the spinor pair is {-n0+1, -n0}
            push(r(n0 + 1), z_limit(n, n0 + 1));
            push(lo.clone(), z_limit(n, n0 + 1));
            push(centre.clone(), l_limit(n, n0 + 1));
            push(hi.clone(), l_limit(n, n0 + 1));
            for i in n0 + 2..n as usize {
                push(r(i), l_limit(n, i));
            }
            vec![
                MiddlePiece::new(n, lo.clone(), centre.clone(), n0 + 1),
                MiddlePiece::new(n, centre.clone(), hi.clone(), n0 + 1),
            ]
        }
        Parity::Even => {
            push(r(n0 + 1), z_limit(n, n0 + 1));
            push(lo.clone(), z_limit(n, n0 + 1));
            push(centre.clone(), l_limit(n, n0 + 2));
            push(hi.clone(), l_limit(n, n0 + 2));
            for i in n0 + 3..n as usize {
                push(r(i), l_limit(n, i));
            }
            vec![
                MiddlePiece::new(n, lo.clone(), centre.clone(), n0 + 1),
                MiddlePiece::new(n, centre.clone(), hi.clone(), n0 + 2),
            ]
        }
    };
    bps.push(int(n as u64));
    let closed_form = PiecewisePolynomial::new(bps, pieces)?;
    let n3_tree = if n == 3 && p >= 5 { Some(N3IntervalTree::new(p)?) } else { None };
    Ok(DensityProfile {
        n,
        p: Some(p),
        closed_form,
        difficult_range: Some(DifficultRange { lo, hi, pieces: middle }),
        n3_tree,
    })
}

impl DensityProfile {
    pub fn support_end(&self) -> Rational {
        int(self.n as u64)
    }

    pub fn in_difficult_range(&self, x: &Rational) -> bool {
        self.difficult_range.as_ref().is_some_and(|d| d.contains(x))
    }

    /// Value at `x`, resolving the `n = 3` tree to [`DEFAULT_DEPTH`].
    pub fn eval(&self, x: &Rational) -> DensityValue {
        self.eval_depth(x, DEFAULT_DEPTH)
    }

    pub fn eval_depth(&self, x: &Rational, depth: u32) -> DensityValue {
        if x < &Rational::zero() || x >= &self.support_end() {
            return DensityValue::Exact(Rational::zero());
        }
        let Some(range) = self.difficult_range.as_ref().filter(|d| d.contains(x)) else {
            return DensityValue::Exact(self.closed_form.eval(x));
        };
        if let Some(tree) = &self.n3_tree {
            if let Ok(v) = tree.eval(x, depth.clamp(1, super::n3::MAX_DEPTH)) {
                return match v {
                    N3Value::Exact(v) => DensityValue::Exact(v),
                    N3Value::Enclosed { lower, upper, .. } => DensityValue::Bracket { lower, upper },
                };
            }
        }
        let piece = range.piece(x).expect("middle pieces cover the difficult range");
        DensityValue::Bracket { lower: piece.lower_at(x), upper: piece.upper_at(x) }
    }

    /// Breakpoints of the closed form, which include the ends of the difficult range.
    pub fn breakpoints(&self) -> &[Rational] {
        self.closed_form.breakpoints()
    }

    /// Interior breakpoints outside the difficult range where the closed form jumps.
    pub fn closed_form_discontinuities(&self) -> Vec<Rational> {
        let bps = self.closed_form.breakpoints();
        self.closed_form
            .discontinuities()
            .into_iter()
            .map(|i| bps[i].clone())
            .filter(|b| !self.in_difficult_range(b))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::is_prime;

    fn grid(lo: &Rational, hi: &Rational, k: i64) -> Vec<Rational> {
        (0..k).map(|t| lo + (hi - lo) * rat(t, k)).collect()
    }

    fn valid_pairs(max_n: u32) -> Vec<(u32, u64)> {
        let mut out = Vec::new();
        for n in 3..=max_n {
            for p in (3..40u64).filter(|&p| is_prime(p)) {
                if QuadricContext::new(n, p).unwrap().closed_form_valid {
                    out.push((n, p));
                }
            }
        }
        out
    }

    #[test]
    fn f_infinity_examples() {
        let f = f_infinity(3).unwrap();
        assert_eq!(f.eval(&rat(5, 2)), DensityValue::Exact(rat(1, 24)));
        assert_eq!(f.eval(&rat(3, 1)), DensityValue::Exact(Rational::zero()));
        assert!(f.closed_form.is_flagged_continuous());
    }

    #[test]
    fn n3_p5_breakpoints() {
        let f = f_p(3, 5).unwrap();
        assert!(f.breakpoints().contains(&rat(12, 5)));
        assert!(f.breakpoints().contains(&rat(13, 5)));
        assert!(f.n3_tree.is_some());
        assert!(f_p(3, 3).unwrap().n3_tree.is_none());
    }

    #[test]
    fn equals_limit_off_the_middle() {
        for (n, p) in valid_pairs(8) {
            let fp = f_p(n, p).unwrap();
            let finf = f_infinity(n).unwrap();
            for x in grid(&rat(0, 1), &int(n as u64 + 1), 97) {
                if !fp.in_difficult_range(&x) {
                    assert_eq!(fp.eval(&x), finf.eval(&x), "n={n} p={p} x={x}");
                }
            }
            assert!(fp.closed_form_discontinuities().is_empty(), "n={n} p={p}");
        }
    }

    #[test]
    fn middle_bracket_is_sound() {
        for (n, p) in valid_pairs(8) {
            let fp = f_p(n, p).unwrap();
            let finf = f_infinity(n).unwrap();
            let range = fp.difficult_range.as_ref().unwrap();
            for piece in &range.pieces {
                for x in grid(&piece.start, &piece.end, 16) {
                    let lower = piece.lower_at(&x);
                    assert!(lower <= piece.upper_at(&x), "n={n} p={p} x={x}");
                    // the limit density is the lower envelope and the closed form records it
                    let DensityValue::Exact(inf) = finf.eval(&x) else { unreachable!() };
                    assert_eq!(lower, inf, "n={n} p={p} x={x}");
                    assert_eq!(fp.closed_form.eval(&x), inf);
                }
            }
        }
    }

    #[test]
    fn n3_tree_lies_in_the_bracket() {
        for p in [5u64, 7, 11] {
            let fp = f_p(3, p).unwrap();
            let range = fp.difficult_range.as_ref().unwrap();
            let tree = fp.n3_tree.as_ref().unwrap();
            for x in grid(&range.lo, &range.hi, 50) {
                let piece = range.piece(&x).unwrap();
                let v = tree.eval(&x, 10).unwrap();
                assert!(&piece.lower_at(&x) <= v.lower() && v.upper() <= &piece.upper_at(&x), "p={p} x={x}");
            }
        }
    }

    #[test]
    fn vanishes_past_n() {
        for (n, p) in valid_pairs(6) {
            let fp = f_p(n, p).unwrap();
            for x in [int(n as u64), int(n as u64) + rat(1, 7), int(2 * n as u64)] {
                assert_eq!(fp.eval(&x), DensityValue::Exact(Rational::zero()));
            }
        }
    }

    #[test]
    fn rejects_invalid_context() {
        assert!(matches!(f_p(5, 3), Err(crate::HkqError::ValidityGate { .. })));
        assert!(matches!(f_infinity(2), Err(crate::HkqError::OutOfScope(_))));
    }
}
