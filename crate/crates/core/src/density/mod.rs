//! Hilbert-Kunz density functions, multiplicities and F-thresholds.

mod hk;
mod limit;
mod n3;
mod profile;

pub use limit::{f_infinity_pieces, l_limit, last_piece, z_limit};
pub use n3::{f_n3_at, N3IntervalTree, N3Value, TreeIntegral, MAX_DEPTH};
pub use profile::{f_infinity, f_p, DensityProfile, DensityValue, DifficultRange, MiddlePiece, DEFAULT_DEPTH};
pub use hk::{
    ehk, ehk_infinity, f_threshold, one_plus_m, verify_wy, CheckStatus, HKBracket, Method, WyReport,
};
