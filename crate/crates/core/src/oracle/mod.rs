//! Brute-force graded colengths of `R/m^[q]` over `F_p`.
//!
//! Nothing here uses the splitting theory. Graded dimensions of this ideal do
//! not change under field extension, so working over `F_p` itself is enough.

pub mod gfp;
pub mod macaulay;
pub mod tensor;

pub use macaulay::{graded_length_macaulay, largest_blocks, MacaulayInstance};
pub use tensor::{graded_lengths_tensor, pair_blocks};

use crate::error::{HkqError, Result};

/// Default limit on the side of any dense matrix the oracle will build.
pub const DEFAULT_CEILING: usize = 512;

/// Environment variable overriding [`DEFAULT_CEILING`].
pub const CEILING_ENV: &str = "HKQ_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Macaulay elimination when it fits under the ceiling, otherwise Jordan types.
    Auto,
    Macaulay,
    Tensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub ceiling: usize,
    pub route: Route,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { ceiling: DEFAULT_CEILING, route: Route::Auto }
    }
}

impl OracleConfig {
    /// Default configuration with the ceiling taken from `HKQ_CEILING` if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(v) = std::env::var(CEILING_ENV) {
            cfg.ceiling = v
                .trim()
                .parse()
                .map_err(|_| HkqError::InvalidParameter(format!("{CEILING_ENV}={v:?} is not a non-negative integer")))?;
        }
        Ok(cfg)
    }
}

/// `l(R/m^[q])_d` with `q = p^s`, using `cfg` to pick the route.
pub fn graded_length_with(cfg: &OracleConfig, n: u32, p: u64, s: u32, d: u64) -> Result<u128> {
    match cfg.route {
        Route::Macaulay => graded_length_macaulay(n, p, s, d, cfg.ceiling),
        Route::Tensor => Ok(graded_lengths_tensor(n, p, s, cfg.ceiling)?.get(d as usize).copied().unwrap_or(0)),
        Route::Auto => match graded_length_macaulay(n, p, s, d, cfg.ceiling) {
            Err(HkqError::ResourceCeiling(_)) => {
                Ok(graded_lengths_tensor(n, p, s, cfg.ceiling)?.get(d as usize).copied().unwrap_or(0))
            }
            other => other,
        },
    }
}

/// Every nonzero graded colength, from degree 0 up.
///
/// Summation stops once three consecutive degrees vanish.
pub fn graded_lengths_with(cfg: &OracleConfig, n: u32, p: u64, s: u32) -> Result<Vec<u128>> {
    if cfg.route == Route::Auto {
        check_fits(p, s, cfg.ceiling)?;
    }
    let use_tensor = match cfg.route {
        Route::Tensor => true,
        Route::Macaulay => false,
        Route::Auto => match largest_blocks(n, p, s) {
            Ok(sides) => sides.iter().any(|&b| b > cfg.ceiling as u128),
            Err(HkqError::ResourceCeiling(_)) => true,
            Err(e) => return Err(e),
        },
    };
    if use_tensor {
        return graded_lengths_tensor(n, p, s, cfg.ceiling);
    }
    let mut out = Vec::new();
    let mut zeros = 0;
    let mut d = 0;
    while zeros < 3 {
        let v = graded_length_macaulay(n, p, s, d, cfg.ceiling)?;
        zeros = if v == 0 { zeros + 1 } else { 0 };
        out.push(v);
        d += 1;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// Rejects `q` for which both routes exceed `ceiling`.
///
/// Degree `q-1` has at least `(q+1)/2` all-even monomials with exponents below `q`,
/// so some Macaulay block is at least as large as the tensor route's matrices.
pub fn check_fits(p: u64, s: u32, ceiling: usize) -> Result<()> {
    let q = crate::frobenius::power(p, s)? as u64;
    if q.div_ceil(2) > ceiling as u64 {
        return Err(HkqError::ResourceCeiling(format!(
            "q={q} needs matrices of side at least {} above the ceiling {ceiling} (set HKQ_CEILING to raise it)",
            q.div_ceil(2)
        )));
    }
    Ok(())
}

/// `l(R/m^[q])_d`, configured from the environment.
pub fn oracle_graded_length(n: u32, p: u64, s: u32, d: u64) -> Result<u128> {
    graded_length_with(&OracleConfig::from_env()?, n, p, s, d)
}

/// `l(R/m^[q])`, configured from the environment.
pub fn oracle_total_colength(n: u32, p: u64, s: u32) -> Result<u128> {
    Ok(graded_lengths_with(&OracleConfig::from_env()?, n, p, s)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree() {
        let mac = OracleConfig { ceiling: 100_000, route: Route::Macaulay };
        let ten = OracleConfig { ceiling: 100_000, route: Route::Tensor };
        for (n, p, s) in [(1u32, 3u64, 1u32), (2, 5, 1), (3, 3, 1), (3, 5, 1), (4, 3, 1), (3, 3, 2), (5, 3, 1)] {
            let a = graded_lengths_with(&mac, n, p, s).unwrap();
            let b = graded_lengths_with(&ten, n, p, s).unwrap();
            assert_eq!(a, b, "n={n} p={p} s={s}");
        }
    }

    #[test]
    fn support_ends_before_nq() {
        let cfg = OracleConfig::default();
        for (n, p, s) in [(3u32, 5u64, 1u32), (4, 3, 2), (6, 5, 1), (3, 7, 2)] {
            let v = graded_lengths_with(&cfg, n, p, s).unwrap();
            assert!(v.len() as u64 <= n as u64 * p.pow(s), "n={n} p={p} s={s}");
        }
    }

    #[test]
    fn totals() {
        let cfg = OracleConfig::default();
        let total = |n, p, s| graded_lengths_with(&cfg, n, p, s).unwrap().iter().sum::<u128>();
        assert_eq!(total(3, 5, 1), 753);
        assert_eq!(total(3, 3, 1), 97);
        assert_eq!(total(4, 3, 1), 275);
    }

    #[test]
    fn ceiling_is_reported() {
        let cfg = OracleConfig { ceiling: 4, route: Route::Auto };
        assert!(matches!(graded_length_with(&cfg, 3, 5, 2, 40), Err(HkqError::ResourceCeiling(_))));
        assert!(matches!(graded_lengths_with(&cfg, 3, 5, 9), Err(HkqError::ResourceCeiling(_))));
    }
}
