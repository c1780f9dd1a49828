use super::{Polynomial, Rational};
use crate::error::{HkqError, Result};
use num_traits::Zero;

/// Polynomial pieces on consecutive half-open intervals `[b_i, b_{i+1})`.
///
/// The function is zero outside `[b_0, b_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<Rational>,
    pieces: Vec<Polynomial>,
    continuous: bool,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.is_empty() && pieces.is_empty() {
            return Ok(Self::default());
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(HkqError::InvalidParameter(format!(
                "{} pieces need {} breakpoints, got {}",
                pieces.len(),
                pieces.len() + 1,
                breakpoints.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HkqError::InvalidParameter("breakpoints must be strictly increasing".into()));
        }
        Ok(PiecewisePolynomial { breakpoints, pieces, continuous: false })
    }

    /// Like [`new`](Self::new) but also checks, and records, continuity at
    /// every interior breakpoint.
    pub fn new_continuous(breakpoints: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        let mut f = Self::new(breakpoints, pieces)?;
        if let Some(i) = f.discontinuities().first() {
            return Err(HkqError::Inconsistent(format!(
                "pieces disagree at breakpoint {}",
                f.breakpoints[*i]
            )));
        }
        f.continuous = true;
        Ok(f)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn is_flagged_continuous(&self) -> bool {
        self.continuous
    }

    /// Index of the piece whose interval contains `x`.
    pub fn piece_index(&self, x: &Rational) -> Option<usize> {
        if self.pieces.is_empty() || x < &self.breakpoints[0] || x >= self.breakpoints.last().unwrap() {
            return None;
        }
        Some(self.breakpoints.partition_point(|b| b <= x) - 1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        match self.piece_index(x) {
            Some(i) => self.pieces[i].eval(x),
            None => Rational::zero(),
        }
    }

    /// Interior breakpoint indices where the adjacent pieces disagree.
    pub fn discontinuities(&self) -> Vec<usize> {
        (1..self.pieces.len())
            .filter(|&i| {
                let b = &self.breakpoints[i];
                self.pieces[i - 1].eval(b) != self.pieces[i].eval(b)
            })
            .collect()
    }

    /// Splits the piece containing `at` without changing any value.
    pub fn refine(&self, at: &Rational) -> Self {
        let Some(i) = self.piece_index(at) else {
            return self.clone();
        };
        if &self.breakpoints[i] == at {
            return self.clone();
        }
        let mut out = self.clone();
        out.breakpoints.insert(i + 1, at.clone());
        out.pieces.insert(i + 1, self.pieces[i].clone());
        out
    }

    /// Exact integral over the whole support.
    pub fn integral(&self) -> Rational {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, f)| f.definite_integral(&self.breakpoints[i], &self.breakpoints[i + 1]))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Exact integral over `[lo, hi)` intersected with the support.
    pub fn integral_over(&self, lo: &Rational, hi: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, f) in self.pieces.iter().enumerate() {
            let a = (&self.breakpoints[i]).max(lo);
            let b = (&self.breakpoints[i + 1]).min(hi);
            if a < b {
                acc += f.definite_integral(a, b);
            }
        }
        acc
    }
}

pub fn integrate(f: &PiecewisePolynomial) -> Rational {
    f.integral()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn cube_third() -> Polynomial {
        Polynomial::new(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 3)])
    }

    #[test]
    fn single_piece_integral() {
        let f = PiecewisePolynomial::new(vec![rat(0, 1), rat(1, 1)], vec![cube_third()]).unwrap();
        assert_eq!(integrate(&f), rat(1, 12));
        assert_eq!(integrate(&PiecewisePolynomial::default()), rat(0, 1));
    }

    #[test]
    fn half_open_evaluation() {
        let f = PiecewisePolynomial::new(
            vec![rat(0, 1), rat(1, 1), rat(2, 1)],
            vec![Polynomial::constant(rat(1, 1)), Polynomial::constant(rat(2, 1))],
        )
        .unwrap();
        assert_eq!(f.eval(&rat(1, 1)), rat(2, 1));
        assert_eq!(f.eval(&rat(2, 1)), rat(0, 1));
        assert_eq!(f.eval(&rat(-1, 2)), rat(0, 1));
        assert_eq!(f.discontinuities(), vec![1]);
        assert!(PiecewisePolynomial::new_continuous(f.breakpoints().to_vec(), f.pieces().to_vec()).is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(PiecewisePolynomial::new(vec![rat(1, 1), rat(0, 1)], vec![Polynomial::zero()]).is_err());
        assert!(PiecewisePolynomial::new(vec![rat(0, 1)], vec![Polynomial::zero()]).is_err());
    }

    proptest! {
        #[test]
        fn refinement_keeps_integral(cuts in prop::collection::vec(1i64..99, 1..8)) {
            let f = PiecewisePolynomial::new_continuous(
                vec![rat(0, 1), rat(1, 1), rat(2, 1)],
                vec![cube_third(), cube_third()],
            ).unwrap();
            let mut g = f.clone();
            for c in cuts {
                g = g.refine(&rat(c, 50));
            }
            prop_assert_eq!(integrate(&g), integrate(&f));
            prop_assert!(g.discontinuities().is_empty());
        }
    }
}
