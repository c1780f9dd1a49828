//! Splitting of `F^s_*(O(a))` and `F^s_*(S(a))` into line bundles and spinor bundles.

use super::QuadricContext;
use crate::error::{HkqError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// The bundle being pushed forward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    /// The structure sheaf `O`.
    O,
    /// The spinor bundle `S`.
    S,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::O => "O",
            Source::S => "S",
        })
    }
}

impl std::str::FromStr for Source {
    type Err = HkqError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" | "o" => Ok(Source::O),
            "S" | "s" => Ok(Source::S),
            _ => Err(HkqError::InvalidParameter(format!("unknown source {s:?}, expected O or S"))),
        }
    }
}

/// Whether `O(t)` is a summand of `F^s_*(O(a))`.
pub fn occurs_line(ctx: &QuadricContext, s: u32, a: i64, t: i64) -> Result<bool> {
    let q = ctx.q(s)?;
    let v = a - t * q;
    Ok(0 <= v && v <= ctx.n as i64 * (q - 1))
}

/// Whether `S(t)` is a summand of `F^s_*(E(a))` with `E` the given source.
///
/// All bounds are integers here: `(n-2)(p-1)/2` is integral for odd `p`
/// and `q/p = p^{s-1}`.
pub fn occurs_spinor(ctx: &QuadricContext, s: u32, a: i64, t: i64, source: Source) -> Result<bool> {
    let q = ctx.q(s)?;
    let n = ctx.n as i64;
    let p = ctx.p as i64;
    let c = (n - 2) * (p - 1) / 2;
    let mut lo = c * (q / p);
    let mut hi = (c + n - 2 + p) * (q / p) - n;
    if source == Source::S {
        let d = i64::from(s == 1);
        lo += 1 - d;
        hi += d;
    }
    let v = a - t * q;
    Ok(lo <= v && v <= hi)
}

/// The one-parameter family left open when two adjacent spinor twists
/// `S(-k)` and `S(-k-1)` both occur.
///
/// With `B = mu_{-k-1}` free, `mu_{-k} = B + (z - l) / 2 rk(S)` and
/// `nu_{-k-1} = l - 2 rk(S) B`; every other count is determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorFamily {
    pub k: i64,
    /// Z-ladder value at index `k+1`, equal to `nu_{-k-1} + 2 rk(S) mu_{-k}`.
    pub z: BigInt,
    /// L-ladder value at index `k+1`, equal to `nu_{-k-1} + 2 rk(S) mu_{-k-1}`.
    pub l: BigInt,
    pub b_min: BigInt,
    pub b_max: BigInt,
}

/// Summand multiplicities of a Frobenius pushforward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: u32,
    pub p: u64,
    pub s: u32,
    pub q: i64,
    pub a: i64,
    pub source: Source,
    /// `nu_t`, listed for every determined `t` in `{0, .., -n+1}`.
    pub nu: BTreeMap<i64, BigInt>,
    /// Nonzero `mu_t`; empty when not exact.
    pub mu: BTreeMap<i64, BigInt>,
    pub exact: bool,
    pub mu_bracket: Option<BTreeMap<i64, (BigInt, BigInt)>>,
    pub nu_bracket: Option<BTreeMap<i64, (BigInt, BigInt)>>,
    pub family: Option<SpinorFamily>,
}

/// Exact or interval-valued non-negative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairValue {
    Exact(BigInt),
    Bracket(BigInt, BigInt),
}

impl PairValue {
    pub fn lo(&self) -> &BigInt {
        match self {
            PairValue::Exact(v) | PairValue::Bracket(v, _) => v,
        }
    }

    pub fn hi(&self) -> &BigInt {
        match self {
            PairValue::Exact(v) | PairValue::Bracket(_, v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PairValue::Exact(_))
    }

    pub fn contains(&self, v: &BigInt) -> bool {
        self.lo() <= v && v <= self.hi()
    }

    /// Interval sum.
    pub fn add(&self, other: &PairValue) -> PairValue {
        match (self, other) {
            (PairValue::Exact(a), PairValue::Exact(b)) => PairValue::Exact(a + b),
            _ => PairValue::Bracket(self.lo() + other.lo(), self.hi() + other.hi()),
        }
    }

    /// Intersection, collapsing to an exact value when the endpoints meet.
    pub fn intersect(&self, other: &PairValue) -> Result<PairValue> {
        let lo = self.lo().max(other.lo()).clone();
        let hi = self.hi().min(other.hi()).clone();
        match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Err(HkqError::Inconsistent(format!("empty intersection [{lo}, {hi}]"))),
            std::cmp::Ordering::Equal => Ok(PairValue::Exact(lo)),
            std::cmp::Ordering::Less => Ok(PairValue::Bracket(lo, hi)),
        }
    }
}

impl Decomposition {
    /// `rk(E) q^n`, the rank of the pushforward.
    pub fn expected_rank(&self) -> BigInt {
        let l0 = if self.source == Source::S { BigInt::from(1u64 << (self.n / 2)) } else { BigInt::from(1) };
        l0 * BigInt::from(self.q).pow(self.n)
    }

    /// `sum nu + rk(S) sum mu`; only meaningful when exact.
    pub fn rank_sum(&self) -> BigInt {
        let l0 = BigInt::from(1u64 << (self.n / 2));
        let nu: BigInt = self.nu.values().sum();
        let mu: BigInt = self.mu.values().sum();
        nu + l0 * mu
    }

    /// Whether `sum nu + rk(S) sum mu` equals the rank. With two spinor twists the
    /// free multiplicity cancels, so the check runs at both ends of its range.
    pub fn rank_identity_holds(&self) -> bool {
        let l0 = BigInt::from(1u64 << (self.n / 2));
        let Some(f) = &self.family else {
            return self.rank_sum() == self.expected_rank();
        };
        let nu: BigInt = self.nu.values().sum();
        let shift = (&f.z - &f.l) / (&l0 * 2);
        [&f.b_min, &f.b_max].into_iter().all(|b| {
            let total = &nu + (&f.l - &l0 * 2 * b) + &l0 * (b * 2 + &shift);
            total == self.expected_rank()
        })
    }

    pub fn nu_at(&self, t: i64) -> BigInt {
        self.nu.get(&t).cloned().unwrap_or_default()
    }

    pub fn mu_at(&self, t: i64) -> BigInt {
        self.mu.get(&t).cloned().unwrap_or_default()
    }

    /// `nu_{-i} + 2 rk(S) mu_{-i+1}`, the degree `a + iq` colength.
    pub fn pair_entry(&self, i: i64) -> PairValue {
        if i < 0 || i >= self.n as i64 {
            return PairValue::Exact(BigInt::zero());
        }
        let two_l0 = BigInt::from(2u64 << (self.n / 2));
        match &self.family {
            None => PairValue::Exact(self.nu_at(-i) + two_l0 * self.mu_at(-i + 1)),
            Some(f) if i == f.k + 1 => PairValue::Exact(f.z.clone()),
            Some(f) if i == f.k + 2 => {
                let base = self.nu_at(-i);
                PairValue::Bracket(&base + &two_l0 * &f.b_min, base + two_l0 * &f.b_max)
            }
            Some(_) => PairValue::Exact(self.nu_at(-i)),
        }
    }
}

/// Twists `t` of spinor summands; all lie in `[-n-2, 1]` for `0 <= a < q`.
pub fn spinor_twists(ctx: &QuadricContext, s: u32, a: i64, source: Source) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for t in (-(ctx.n as i64) - 2..=1).rev() {
        if occurs_spinor(ctx, s, a, t, source)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Decomposes `F^s_*(E(a))` for `0 <= a < q`.
///
/// Line bundle counts come from the Z ladder below the spinor twists and the
/// L ladder above them; spinor counts come from the rank. With a single
/// spinor type the result is exact. With two adjacent types (source `O`
/// only) the result is the exact feasible family, reported as brackets.
pub fn decompose(ctx: &QuadricContext, s: u32, a: i64, source: Source) -> Result<Decomposition> {
    let q = ctx.q(s)?;
    if !(0..q).contains(&a) {
        return Err(HkqError::InvalidParameter(format!("a={a} outside [0, {q})")));
    }
    let n = ctx.n as i64;
    let l0 = BigInt::from(ctx.lambda0);
    let two_l0 = BigInt::from(ctx.two_lambda0);
    let twists = spinor_twists(ctx, s, a, source)?;
    if twists.len() > 2 || (twists.len() == 2 && twists[0] - twists[1] != 1) {
        return Err(HkqError::OutOfScope(format!("spinor twists {twists:?} at a={a}, q={q}")));
    }
    if twists.len() == 2 && source == Source::S {
        return Err(HkqError::OutOfScope(format!("two spinor twists for a spinor source at a={a}, q={q}")));
    }
    let top = |m: i64| match source {
        Source::O => ctx.y(m),
        Source::S => ctx.dim_spinor(m),
    };
    // Top cohomology of E(a - jq), read through Serre duality.
    let dual = |j: i64| match source {
        Source::O => ctx.y(j * q - a - n),
        Source::S => ctx.dim_spinor(j * q + 1 - a - n),
    };
    let (z_max, l_min) = match (twists.first(), twists.last()) {
        (Some(hi), Some(lo)) => (-hi, 1 - lo),
        _ => (n - 1, n),
    };

    let mut nu: BTreeMap<i64, BigInt> = BTreeMap::new();
    let z_step = |i: i64, nu: &BTreeMap<i64, BigInt>| -> BigInt {
        let mut v = top(a + i * q);
        for k in 1..=i {
            v -= ctx.y(k) * nu.get(&(-i + k)).cloned().unwrap_or_default();
        }
        v
    };
    let l_step = |i: i64, nu: &BTreeMap<i64, BigInt>| -> BigInt {
        let mut v = dual(n - i);
        for k in 1..n - i {
            v -= ctx.y(k) * nu.get(&(-i - k)).cloned().unwrap_or_default();
        }
        v
    };
    for i in 0..=z_max.min(n - 1) {
        let v = z_step(i, &nu);
        nu.insert(-i, v);
    }
    for i in (l_min.max(0)..n).rev() {
        let v = l_step(i, &nu);
        nu.insert(-i, v);
    }
    if let Some((t, v)) = nu.iter().find(|(_, v)| v.is_negative()) {
        return Err(HkqError::Inconsistent(format!("negative nu_{t} = {v} at a={a}, q={q}")));
    }

    let rank = match source {
        Source::O => BigInt::from(q).pow(ctx.n),
        Source::S => &l0 * BigInt::from(q).pow(ctx.n),
    };
    let known: BigInt = nu.values().sum();
    let residual = &rank - &known;
    let mut out = Decomposition {
        n: ctx.n,
        p: ctx.p,
        s,
        q,
        a,
        source,
        nu,
        mu: BTreeMap::new(),
        exact: true,
        mu_bracket: None,
        nu_bracket: None,
        family: None,
    };

    match twists.as_slice() {
        [] => {
            if !residual.is_zero() {
                return Err(HkqError::Inconsistent(format!("rank residual {residual} without spinors at a={a}")));
            }
        }
        [t] => {
            let (m, r) = residual.div_rem(&l0);
            if !r.is_zero() || m.is_negative() {
                return Err(HkqError::Inconsistent(format!("rank residual {residual} not a multiple of {l0}")));
            }
            if !m.is_zero() {
                out.mu.insert(*t, m);
            }
        }
        [hi, _] => {
            let k = -hi;
            let z = z_step(k + 1, &out.nu);
            let l = l_step(k + 1, &out.nu);
            let diff = &z - &l;
            if !(&diff % &two_l0).is_zero() || &residual * 2 != &z + &l {
                return Err(HkqError::Inconsistent(format!("spinor family check failed at a={a}, q={q}")));
            }
            if k + 2 < n {
                // Z ladder continued with the exact value at k+1 must close up with the L side.
                let mut z2 = top(a + (k + 2) * q);
                for j in 1..=k + 2 {
                    let prev = if j == 1 { z.clone() } else { out.nu_at(-(k + 2) + j) };
                    z2 -= ctx.y(j) * prev;
                }
                if &z2 + &z != out.nu_at(-(k + 2)) + &l {
                    return Err(HkqError::Inconsistent(format!("ladder closure failed at a={a}, q={q}")));
                }
            }
            let shift = &diff / &two_l0;
            let b_min = (-&shift).max(BigInt::zero());
            let b_max = l.div_floor(&two_l0);
            if b_min > b_max {
                return Err(HkqError::Inconsistent(format!("empty spinor family at a={a}, q={q}")));
            }
            out.exact = false;
            out.mu_bracket = Some(BTreeMap::from([
                (-k, (&b_min + &shift, &b_max + &shift)),
                (-k - 1, (b_min.clone(), b_max.clone())),
            ]));
            out.nu_bracket = Some(BTreeMap::from([(-k - 1, (&l - &two_l0 * &b_max, &l - &two_l0 * &b_min))]));
            out.family = Some(SpinorFamily { k, z, l, b_min, b_max });
        }
        _ => unreachable!(),
    }
    Ok(out)
}

/// Decomposition for `s = 1`, where at most one spinor type can occur.
pub fn decompose_s1(ctx: &QuadricContext, a: i64, source: Source) -> Result<Decomposition> {
    if !(0..ctx.p as i64).contains(&a) {
        return Err(HkqError::InvalidParameter(format!("a={a} outside [0, {})", ctx.p)));
    }
    let d = decompose(ctx, 1, a, source)?;
    if !d.exact {
        return Err(HkqError::Inconsistent(format!("two spinor types for s=1 at a={a}")));
    }
    Ok(d)
}
