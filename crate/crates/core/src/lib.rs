//! Eigenvalue predictions for selfadjoint polynomials in cyclically monotone
//! families.
//!
//! The crate is organised bottom-up:
//!
//! - [`ncalg`]: words, noncommutative polynomials and their parser.
//! - [`cmcalc`]: state models for both families and the brute-force moment
//!   oracle built from the cyclic monotone factorization.
//! - [`linred`]: the `B' = id ⊗ τ(B)` matrix reduction and the closed-form
//!   eigenvalue recipes.
//! - [`spectra`]: eigenvalue multisets, the dense Hermitian eigensolver and
//!   comparison metrics.
//! - [`rmtlab`]: GUE / Haar samplers and the scenario runner for the
//!   random-matrix experiments.
//! - [`cli`]: command implementations behind the `cyclic-ev` binary.

pub mod cli;
pub mod cmcalc;
pub mod error;
pub mod linred;
pub mod ncalg;
pub mod numeric;
pub mod rmtlab;
pub mod spectra;

pub use error::{Error, ParseError, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
