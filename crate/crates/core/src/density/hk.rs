//! HK multiplicities as integrals of the density, F-thresholds, and a consistency report.

use super::limit::{f_infinity_pieces, last_piece};
use super::profile::{f_infinity, f_p, DensityProfile, DensityValue};
use crate::arith::{int, rat, sec_tan_coefficient, Rational};
use crate::error::{HkqError, Result};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    /// Exact integration of the `n = 3` tree to this depth plus a certified tail.
    Truncated(u32),
    /// Exact outside the difficult range, interval integral inside it.
    Bracketed,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => write!(f, "exact"),
            Method::Truncated(d) => write!(f, "truncated({d})"),
            Method::Bracketed => write!(f, "bracketed"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HKBracket {
    pub lower: Rational,
    pub upper: Rational,
    pub method: Method,
}

impl HKBracket {
    pub fn exact(v: Rational) -> Self {
        HKBracket { lower: v.clone(), upper: v, method: Method::Exact }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / int(2)
    }

    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        lo <= &self.lower && &self.upper <= hi
    }
}

/// `1 + m_{n+1}`, the integral of `f^inf` predicted by the zigzag numbers.
pub fn one_plus_m(n: u32) -> Rational {
    Rational::one() + sec_tan_coefficient(n + 1)
}

/// `e_HK` in the limit `p -> inf`, as the exact integral of `f^inf`.
pub fn ehk_infinity(n: u32) -> Result<Rational> {
    Ok(f_infinity_pieces(n)?.integral())
}

/// Bracket for `e_HK(R_p, m)`.
///
/// For `n = 3`, `p >= 5` the bracket is narrowed below `epsilon` by resolving the
/// interval tree. Otherwise it is the exact integral outside the difficult range
/// plus the integral of the pointwise bracket inside it, and `epsilon` is not used.
pub fn ehk(n: u32, p: u64, epsilon: &Rational) -> Result<HKBracket> {
    if epsilon <= &Rational::zero() {
        return Err(HkqError::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let prof = f_p(n, p)?;
    ehk_of(&prof, epsilon)
}

fn ehk_of(prof: &DensityProfile, epsilon: &Rational) -> Result<HKBracket> {
    let Some(range) = &prof.difficult_range else {
        return Ok(HKBracket::exact(prof.closed_form.integral()));
    };
    let cf = &prof.closed_form;
    let outside = cf.integral_over(&Rational::zero(), &range.lo) + cf.integral_over(&range.hi, &prof.support_end());
    if let Some(tree) = &prof.n3_tree {
        for depth in 1..=super::n3::MAX_DEPTH {
            let t = tree.integrate_middle(depth)?;
            if &(&t.upper - &t.lower) <= epsilon {
                return Ok(HKBracket {
                    lower: &outside + t.lower,
                    upper: &outside + t.upper,
                    method: Method::Truncated(depth),
                });
            }
        }
        return Err(HkqError::ResourceCeiling(format!("epsilon={epsilon} not reached within the depth cap")));
    }
    // the closed form holds a lower envelope on each middle piece
    let lower = cf.integral();
    let upper = range.pieces.iter().fold(outside, |acc, m| acc + m.upper.definite_integral(&m.start, &m.end));
    Ok(HKBracket { lower, upper, method: Method::Bracketed })
}

/// Right end of the support of `f_p`, checking the last piece is `2(n-x)^n/n!`.
pub fn f_threshold(n: u32, p: u64) -> Result<Rational> {
    let prof = f_p(n, p)?;
    let cf = &prof.closed_form;
    let k = cf
        .pieces()
        .iter()
        .rposition(|f| !f.is_zero())
        .ok_or_else(|| HkqError::Inconsistent("density vanishes identically".into()))?;
    if cf.pieces()[k] != last_piece(n) {
        return Err(HkqError::Inconsistent(format!("last piece is {}, not 2(n-x)^n/n!", cf.pieces()[k])));
    }
    let end = cf.breakpoints()[k + 1].clone();
    if end != int(n as u64) {
        return Err(HkqError::Inconsistent(format!("support ends at {end}, not at n={n}")));
    }
    Ok(end)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    /// The exact statement is out of reach; the available brackets are consistent with it.
    BracketConsistent,
    Fail(String),
}

impl CheckStatus {
    pub fn ok(&self) -> bool {
        !matches!(self, CheckStatus::Fail(_))
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::BracketConsistent => write!(f, "bracket-consistent"),
            CheckStatus::Fail(why) => write!(f, "fail: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WyReport {
    pub n: u32,
    pub p: u64,
    /// `f_p = f^inf` piece by piece off the difficult range.
    pub off_middle_equal: CheckStatus,
    /// `f_p >= f^inf` on a grid inside the difficult range.
    pub middle_dominates: CheckStatus,
    /// The `e_HK` bracket lies in `[1 + m_{n+1}, 1 + m_{n+1} + (2n-4)/p]`.
    pub ehk_bounds: CheckStatus,
    /// `f_p(x) = f_p(n - x)` for sampled `x <= (n-2)(1-1/p)/2`.
    pub symmetry: CheckStatus,
    pub ehk: HKBracket,
}

impl WyReport {
    pub fn all_ok(&self) -> bool {
        [&self.off_middle_equal, &self.middle_dominates, &self.ehk_bounds, &self.symmetry].iter().all(|c| c.ok())
    }
}

const GRID: i64 = 64;

fn check_off_middle(fp: &DensityProfile, finf: &DensityProfile) -> CheckStatus {
    let (cp, ci) = (&fp.closed_form, &finf.closed_form);
    for (k, poly) in cp.pieces().iter().enumerate() {
        let (a, b) = (&cp.breakpoints()[k], &cp.breakpoints()[k + 1]);
        if fp.in_difficult_range(a) {
            continue;
        }
        let Some(j) = ci.piece_index(a) else {
            return CheckStatus::Fail(format!("no limit piece at {a}"));
        };
        if b > &ci.breakpoints()[j + 1] {
            return CheckStatus::Fail(format!("piece [{a}, {b}) straddles a limit breakpoint"));
        }
        if poly != &ci.pieces()[j] {
            return CheckStatus::Fail(format!("pieces differ on [{a}, {b})"));
        }
    }
    CheckStatus::Pass
}

fn check_middle(fp: &DensityProfile, finf: &DensityProfile) -> CheckStatus {
    let Some(range) = &fp.difficult_range else {
        return CheckStatus::Pass;
    };
    for t in 0..GRID {
        let x = &range.lo + (&range.hi - &range.lo) * rat(t, GRID);
        let limit = finf.eval(&x);
        let v = fp.eval(&x);
        if v.lower() < limit.lower() || v.lower() > v.upper() {
            return CheckStatus::Fail(format!("at x={x}: f_p in [{}, {}], f^inf = {}", v.lower(), v.upper(), limit.lower()));
        }
    }
    if fp.n3_tree.is_some() {
        CheckStatus::Pass
    } else {
        CheckStatus::BracketConsistent
    }
}

fn check_symmetry(fp: &DensityProfile, p: u64) -> CheckStatus {
    let n = fp.n as i64;
    let top = rat((n - 2) * (p as i64 - 1), 2 * p as i64);
    for t in 0..=GRID {
        let x = &top * rat(t, GRID);
        let y = int(n) - &x;
        match (fp.eval(&x), fp.eval(&y)) {
            (DensityValue::Exact(a), DensityValue::Exact(b)) if a == b => {}
            (a, b) => return CheckStatus::Fail(format!("f({x}) = {a:?} but f({y}) = {b:?}")),
        }
    }
    CheckStatus::Pass
}

pub fn verify_wy(n: u32, p: u64) -> Result<WyReport> {
    let fp = f_p(n, p)?;
    let finf = f_infinity(n)?;
    let ehk = ehk_of(&fp, &rat(1, 1_000_000))?;
    let lo = one_plus_m(n);
    let hi = &lo + rat(2 * n as i64 - 4, p as i64);
    let ehk_bounds = if ehk.within(&lo, &hi) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(format!("[{}, {}] not inside [{lo}, {hi}]", ehk.lower, ehk.upper))
    };
    Ok(WyReport {
        n,
        p,
        off_middle_equal: check_off_middle(&fp, &finf),
        middle_dominates: check_middle(&fp, &finf),
        ehk_bounds,
        symmetry: check_symmetry(&fp, p),
        ehk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_integrals() {
        assert_eq!(ehk_infinity(3).unwrap(), rat(29, 24));
        assert_eq!(ehk_infinity(4).unwrap(), rat(17, 15));
        assert_eq!(ehk_infinity(5).unwrap(), rat(781, 720));
        for n in 3..=10 {
            assert_eq!(ehk_infinity(n).unwrap(), one_plus_m(n), "n={n}");
        }
    }

    #[test]
    fn n3_brackets() {
        let eps = rat(1, 1_000_000);
        let mut last: Option<Rational> = None;
        for p in [5u64, 7, 11, 13] {
            let b = ehk(3, p, &eps).unwrap();
            assert!(b.width() <= eps);
            assert!(matches!(b.method, Method::Truncated(_)));
            assert!(b.within(&rat(29, 24), &(rat(29, 24) + rat(2, p as i64))), "p={p} {b:?}");
            // closed form known for the five-variable quadric
            let p2 = int(p * p);
            let known = (&p2 * int(29) + int(15)) / (&p2 * int(24) + int(12));
            assert!(b.lower <= known && known <= b.upper, "p={p}");
            if let Some(prev) = &last {
                assert!(&b.midpoint() <= prev);
            }
            last = Some(b.midpoint());
        }
    }

    #[test]
    fn even_brackets() {
        let b = ehk(4, 5, &rat(1, 100)).unwrap();
        assert_eq!(b.method, Method::Bracketed);
        assert_eq!(b.lower, rat(17, 15));
        assert!(b.within(&rat(17, 15), &(rat(17, 15) + rat(4, 5))));
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(matches!(ehk(3, 5, &Rational::zero()), Err(HkqError::InvalidParameter(_))));
        assert!(ehk(5, 3, &rat(1, 2)).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(f_threshold(3, 5).unwrap(), int(3));
        assert_eq!(f_threshold(4, 5).unwrap(), int(4));
        assert_eq!(f_threshold(5, 7).unwrap(), int(5));
    }

    #[test]
    fn reports() {
        for (n, p) in [(3u32, 5u64), (3, 7)] {
            let r = verify_wy(n, p).unwrap();
            assert_eq!(r.off_middle_equal, CheckStatus::Pass);
            assert_eq!(r.middle_dominates, CheckStatus::Pass);
            assert_eq!(r.ehk_bounds, CheckStatus::Pass);
            assert_eq!(r.symmetry, CheckStatus::Pass);
        }
        let r = verify_wy(4, 5).unwrap();
        assert_eq!(r.off_middle_equal, CheckStatus::Pass);
        assert_eq!(r.middle_dominates, CheckStatus::BracketConsistent);
        assert_eq!(r.ehk_bounds, CheckStatus::Pass);
        assert_eq!(r.symmetry, CheckStatus::Pass);
    }
}
