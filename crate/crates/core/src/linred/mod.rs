//! Matrices over the two algebras, the `id ⊗ τ` reduction of B-matrices,
//! chain moments, and closed-form eigenvalue predictions.

mod chain;
mod matrix;
mod prediction;
mod recipes;

pub use chain::{chain_moment, chain_moment_unreduced, ev_chain};
pub use matrix::{reduce_b_matrix, AlgMatrix, Purity, ScalarMatrix};
pub use prediction::{Prediction, Provenance};
pub use recipes::{
    ev_a_plus_babab, ev_anticommutator, ev_commutator, ev_conjugated_sum, ev_sum_aba, ev_sum_bab,
    ev_sum_bac, psd_sqrt,
};
