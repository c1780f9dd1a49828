use crate::arith::{dim_quadric, dim_spinor, rat, spinor_rank, Rational};
use crate::error::{HkqError, Result};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// The quadric `Q_n` in characteristic `p` together with its derived constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricContext {
    pub n: u32,
    pub p: u64,
    /// Rank of the spinor bundle, `2^{floor(n/2)}`.
    pub lambda0: u64,
    pub two_lambda0: u64,
    /// `ceil((n-2)(p-1) / 2p)`.
    pub n0: i64,
    /// `n0 - (n-2)(p-1) / 2p`.
    pub delta: Rational,
    pub parity: Parity,
    /// Whether the ladder formulas are proven for this `(n, p)`.
    pub closed_form_valid: bool,
}

/// Largest `p^s` the ladder code accepts; keeps every degree inside `i64`.
pub const MAX_Q: i64 = 1 << 53;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rejects `p = 2`, composite `p`, and the dimensions `n < 3`, which need none of this machinery.
pub fn check_scope(n: u32, p: u64) -> Result<()> {
    if n < 3 {
        return Err(HkqError::OutOfScope(format!(
            "n={n}: quadrics of dimension 1 and 2 have a characteristic-free HK theory and are not handled here"
        )));
    }
    check_prime(p)
}

pub fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(HkqError::OutOfScope("characteristic 2 is not supported".into()));
    }
    if !is_prime(p) {
        return Err(HkqError::InvalidParameter(format!("p={p} is not a prime")));
    }
    Ok(())
}

impl QuadricContext {
    pub fn new(n: u32, p: u64) -> Result<Self> {
        check_scope(n, p)?;
        let num = (n as i64 - 2) * (p as i64 - 1);
        let den = 2 * p as i64;
        let n0 = (num + den - 1) / den;
        let delta = rat(n0, 1) - rat(num, den);
        let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        let closed_form_valid = match parity {
            Parity::Even => p + 2 >= n as u64,
            Parity::Odd => p + 4 >= 2 * n as u64,
        };
        let lambda0 = spinor_rank(n);
        Ok(QuadricContext { n, p, lambda0, two_lambda0: 2 * lambda0, n0, delta, parity, closed_form_valid })
    }

    pub fn require_closed_form(&self) -> Result<()> {
        if self.closed_form_valid {
            return Ok(());
        }
        let need = match self.parity {
            Parity::Even => format!("p >= n-2 = {}", self.n as i64 - 2),
            Parity::Odd => format!("p >= 2n-4 = {}", 2 * self.n as i64 - 4),
        };
        Err(HkqError::ValidityGate { n: self.n, p: self.p, reason: format!("needs {need}; use the oracle instead") })
    }

    /// `q = p^s`, refusing exponents whose powers leave the supported range.
    pub fn q(&self, s: u32) -> Result<i64> {
        power(self.p, s)
    }

    /// `Y_m` on this quadric.
    pub fn y(&self, m: i64) -> BigInt {
        dim_quadric(self.n, m)
    }

    pub fn dim_spinor(&self, m: i64) -> BigInt {
        dim_spinor(self.n, m)
    }

    /// Half-width `(n-2)/2p` of the middle range around `(n+2)/2`.
    pub fn middle_halfwidth(&self) -> Rational {
        rat(self.n as i64 - 2, 2 * self.p as i64)
    }
}

pub fn power(p: u64, s: u32) -> Result<i64> {
    if s == 0 {
        return Err(HkqError::InvalidParameter("s must be at least 1".into()));
    }
    let mut q: i64 = 1;
    for _ in 0..s {
        q = q
            .checked_mul(p as i64)
            .filter(|v| *v <= MAX_Q)
            .ok_or_else(|| HkqError::InvalidParameter(format!("{p}^{s} exceeds the supported range")))?;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants() {
        let c = QuadricContext::new(3, 5).unwrap();
        assert_eq!((c.lambda0, c.two_lambda0, c.n0), (2, 4, 1));
        assert_eq!(c.delta, rat(3, 5));
        assert!(c.closed_form_valid);
        let c = QuadricContext::new(4, 5).unwrap();
        assert_eq!((c.lambda0, c.two_lambda0, c.n0), (4, 8, 1));
        assert_eq!(c.delta, rat(1, 5));
        assert!(!QuadricContext::new(5, 5).unwrap().closed_form_valid);
    }

    #[test]
    fn scope_errors() {
        assert!(matches!(QuadricContext::new(2, 5), Err(HkqError::OutOfScope(_))));
        assert!(matches!(QuadricContext::new(3, 2), Err(HkqError::OutOfScope(_))));
        assert!(matches!(QuadricContext::new(3, 9), Err(HkqError::InvalidParameter(_))));
        let c = QuadricContext::new(7, 5).unwrap();
        assert!(matches!(c.require_closed_form(), Err(HkqError::ValidityGate { .. })));
    }

    // (n, p) with n odd and n-2 <= p < 2n-4 breaks the simplified formula
    // n0 = ceil(n/2) - 1: for (5, 3) the definition gives 1.
    #[test]
    fn n0_simplification_needs_the_gate() {
        assert_eq!(QuadricContext::new(5, 3).unwrap().n0, 1);
    }

    fn primes() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 101])
    }

    proptest! {
        #[test]
        fn constants_simplify_when_valid(n in 3u32..40, p in primes()) {
            let c = QuadricContext::new(n, p).unwrap();
            // Even n needs only p >= n-2; odd n needs the full closed-form gate.
            let applies = match c.parity {
                Parity::Even => p + 2 >= n as u64,
                Parity::Odd => c.closed_form_valid,
            };
            if applies {
                prop_assert_eq!(c.n0, (n as i64 + 1) / 2 - 1);
                let base = c.middle_halfwidth();
                match c.parity {
                    Parity::Even => prop_assert_eq!(c.delta.clone(), base),
                    Parity::Odd => prop_assert_eq!(c.delta.clone(), base + rat(1, 2)),
                }
            }
        }
    }
}
