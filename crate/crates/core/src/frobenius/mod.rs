//! Frobenius pushforwards on the quadric `Q_n` and the graded colengths they determine.

mod context;
mod decompose;
mod ladder;
mod pairs;
mod transfer;

pub use context::{check_prime, check_scope, is_prime, power, Parity, QuadricContext, MAX_Q};
pub use decompose::{
    decompose, decompose_s1, occurs_line, occurs_spinor, spinor_twists, Decomposition, PairValue, Source,
    SpinorFamily,
};
pub use ladder::{l_coeffs_int, l_coefficients, l_eval, z_coeffs_int, z_coefficients, z_eval};
pub use pairs::{graded_length, graded_lengths, lemma_computable, pair_table, total_colength, PairTable};
pub use transfer::{decompose_n3, transfer_matrix, TransferMatrix, BASIS, STRUCTURAL_ZEROS};
