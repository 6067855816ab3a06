//! Alternating chains `A₁B₁⋯A_kB_k` of algebra matrices.

use std::collections::BTreeSet;

use serde_json::json;

use super::matrix::{reduce_b_matrix, AlgMatrix, ScalarMatrix};
use super::prediction::Prediction;
use crate::cmcalc::{cm_moment, TraceClassModel, TraceWeight, Tracial};
use crate::error::{Error, Result};
use crate::ncalg::Generator;
use crate::numeric::{hermiticity_defect, kron_identity, Realization};
use crate::spectra::{hermitian_spectrum, real_spectrum};
use crate::C64;

fn check_chain(chain: &[AlgMatrix]) -> Result<usize> {
    if chain.is_empty() || !chain.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "a chain alternates A- and B-matrices, got {} matrices",
            chain.len()
        )));
    }
    let dim = chain[0].dim();
    for (p, m) in chain.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "chain entry {} is {}x{}, expected {dim}x{dim}",
                p + 1,
                m.dim(),
                m.dim()
            )));
        }
        let ok = if p % 2 == 0 {
            m.is_pure_a()
        } else {
            m.is_pure_b()
        };
        if !ok {
            let kind = if p % 2 == 0 {
                "pure-A without unit terms"
            } else {
                "pure-B"
            };
            return Err(Error::NotInDomain(format!(
                "chain entry {} is not {kind}",
                p + 1
            )));
        }
    }
    Ok(dim)
}

fn evaluate_trace(
    product: &AlgMatrix,
    m: u32,
    eval: impl Fn(&crate::ncalg::Word) -> Result<C64>,
) -> Result<C64> {
    let tr = product.power(m)?.trace();
    let mut total = C64::new(0.0, 0.0);
    for (w, c) in tr.terms() {
        total += c * eval(w)?;
    }
    Ok(total)
}

/// `Tr ⊗ ω((A₁B₁′⋯A_kB_k′)^m)` with every B-matrix replaced by its scalar
/// reduction.
pub fn chain_moment(
    chain: &[AlgMatrix],
    m: u32,
    a_model: &dyn TraceWeight,
    b_state: &dyn Tracial,
) -> Result<C64> {
    check_chain(chain)?;
    let mut product: Option<AlgMatrix> = None;
    for pair in chain.chunks(2) {
        let reduced = reduce_b_matrix(&pair[1], b_state)?;
        let next = match product {
            None => pair[0].mul_scalar(&reduced)?,
            Some(p) => p.mul(&pair[0])?.mul_scalar(&reduced)?,
        };
        product = Some(next);
    }
    evaluate_trace(&product.expect("chain is nonempty"), m, |w| {
        a_model.omega(w)
    })
}

/// Same moment as [`chain_moment`] computed without the reduction: the chain
/// is expanded symbolically and every word goes through [`cm_moment`].
pub fn chain_moment_unreduced(
    chain: &[AlgMatrix],
    m: u32,
    a_model: &dyn TraceWeight,
    b_state: &dyn Tracial,
) -> Result<C64> {
    check_chain(chain)?;
    let mut product = chain[0].clone();
    for next in &chain[1..] {
        product = product.mul(next)?;
    }
    evaluate_trace(&product, m, |w| cm_moment(w, a_model, b_state))
}

/// `EV(B₀A₁B₁⋯A_kB_k)` as the spectrum of `A₁B₁′⋯A_k(B_kB₀)′`, with every
/// A-generator realized at truncation `n`.
///
/// With `selfadjoint = Some(gens)` the symbolic product is checked to be
/// selfadjoint first, treating `gens` as selfadjoint generators; with `None`
/// the caller vouches for it.
pub fn ev_chain(
    b0: &AlgMatrix,
    chain: &[AlgMatrix],
    model: &TraceClassModel,
    state: &dyn Tracial,
    n: usize,
    selfadjoint: Option<&BTreeSet<Generator>>,
) -> Result<Prediction> {
    let dim = check_chain(chain)?;
    if b0.dim() != dim {
        return Err(Error::DimensionMismatch(
            "B₀ does not match the chain dimension".into(),
        ));
    }
    if !b0.is_pure_b() {
        return Err(Error::NotInDomain("B₀ is not pure-B".into()));
    }
    if let Some(gens) = selfadjoint {
        let mut full = b0.clone();
        for m in chain {
            full = full.mul(m)?;
        }
        if !full.is_selfadjoint(gens) {
            return Err(Error::NotSelfadjoint(
                "the chain product is not selfadjoint".into(),
            ));
        }
    }
    let k = chain.len() / 2;
    let mut reduced: Vec<ScalarMatrix> = Vec::with_capacity(k);
    for (p, pair) in chain.chunks(2).enumerate() {
        let b = if p + 1 == k {
            pair[1].mul(b0)?
        } else {
            pair[1].clone()
        };
        reduced.push(reduce_b_matrix(&b, state)?);
    }
    let mats = model.realize(n);
    let d = model.realization_dim(n);
    let r = Realization {
        a: &mats,
        b: &[],
        dim: d,
    };
    let mut x: Option<crate::CMatrix> = None;
    for (pair, bp) in chain.chunks(2).zip(&reduced) {
        let a = pair[0].realize(&r)?;
        let step = a * kron_identity(bp, d);
        x = Some(match x {
            None => step,
            Some(acc) => acc * step,
        });
    }
    let x = x.expect("chain is nonempty");
    let spectrum = if hermiticity_defect(&x) <= 1e-9 {
        hermitian_spectrum(&x)?
    } else {
        real_spectrum(&x, 1e-8)?
    };
    let parameters = json!({
        "k": k,
        "dim": dim,
        "truncation": n,
        "reduced": reduced
            .iter()
            .map(|s| (0..s.nrows()).map(|i| (0..s.ncols()).map(|j| s[(i, j)].re).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    Ok(Prediction::new(
        "chain",
        parameters,
        spectrum.values().to_vec(),
    ))
}
