//! Fixtures shared by the integration suites: random model data, the
//! recipe-vs-oracle instance checks and the property runners.
#![allow(dead_code)]

pub mod props;

use std::collections::BTreeSet;

use cyclic_ev::cmcalc::{
    poly_moment, MomentTable, TraceClassModel, TraceWeight, Tracial, TracialState,
};
use cyclic_ev::linred::{
    ev_anticommutator, ev_commutator, ev_conjugated_sum, ev_sum_aba, ev_sum_bab, ev_sum_bac,
    AlgMatrix, Prediction,
};
use cyclic_ev::ncalg::{Letter, NCPolynomial, Word};
use cyclic_ev::spectra::hermitian_spectrum;
use cyclic_ev::{CMatrix, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn cnormal(rng: &mut impl Rng) -> C64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    C64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| cnormal(rng)) * re(1.0 / (n as f64).sqrt())
}

pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
    let m = random_matrix(n, rng);
    (&m + m.adjoint()) * re(0.5)
}

/// `k` Hermitian matrices of a common random size `N ≤ 16`.
pub fn random_family(k: usize, rng: &mut impl Rng) -> TraceClassModel {
    let n = rng.random_range(2..=16);
    TraceClassModel::matrix_family((0..k).map(|_| random_hermitian(n, rng)).collect()).unwrap()
}

/// `M M* / k` for a complex Gaussian `M`.
pub fn random_gram(k: usize, rng: &mut impl Rng) -> CMatrix {
    let m = CMatrix::from_fn(k, k, |_, _| cnormal(rng));
    &m * m.adjoint() * re(1.0 / k as f64)
}

pub fn letter(l: Letter) -> NCPolynomial {
    NCPolynomial::letter(l)
}

pub fn word(letters: &[Letter]) -> Word {
    Word::new(letters.to_vec())
}

/// One or two terms of degree `1..=max_degree` in `a1..ak`.
///
/// No stars: the matrix families are Hermitian, so `a'` and `a` would be
/// distinct words with equal moments and the oracle would sum cancelling
/// terms.
pub fn random_a_poly(k: usize, max_degree: usize, rng: &mut impl Rng) -> NCPolynomial {
    let mut p = NCPolynomial::zero();
    let terms = rng.random_range(1..=2);
    for _ in 0..terms {
        let len = rng.random_range(1..=max_degree);
        let letters: Vec<Letter> = (0..len)
            .map(|_| Letter::a(rng.random_range(1..=k as u32)))
            .collect();
        p.add_term(Word::new(letters), cnormal(rng));
    }
    if p.is_zero() {
        p = letter(Letter::a(1));
    }
    p
}

/// `|x − y| / max(|x|, |y|, scale)`.
pub fn rel_err(x: C64, y: C64, scale: f64) -> f64 {
    let d = x.norm().max(y.norm()).max(scale);
    if d == 0.0 {
        0.0
    } else {
        (x - y).norm() / d
    }
}

/// Worst relative gap between `Σλ^m` of the prediction and `ω(p^m)`, with
/// `Σ|λ|^m` as the scale.
pub fn recipe_vs_oracle(
    pred: &Prediction,
    p: &NCPolynomial,
    m_max: u32,
    model: &dyn TraceWeight,
    state: &dyn Tracial,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 1..=m_max {
        let oracle = poly_moment(p, m, model, state)?;
        let formula = re(pred.moment(m));
        let scale: f64 = pred
            .multiset
            .values()
            .iter()
            .map(|v| v.abs().powi(m as i32))
            .sum();
        worst = worst.max(rel_err(oracle, formula, scale));
    }
    Ok(worst)
}

fn tau_pair(rng: &mut impl Rng) -> (f64, f64) {
    let tb: f64 = rng.random_range(-2.0..2.0);
    (tb, tb * tb + rng.random_range(0.0..2.0))
}

fn two_moment_state(tb: f64, tb2: f64) -> TracialState {
    TracialState::two_moments(tb, tb2)
}

pub fn anticommutator_instance(rng: &mut impl Rng, m_max: u32, _degree: usize) -> Result<f64> {
    let model = random_family(1, rng);
    let (tb, tb2) = tau_pair(rng);
    let ev = model.generator_spectrum(1, 0)?;
    let pred = ev_anticommutator(&ev, tb, tb2)?;
    let (a, b) = (letter(Letter::a(1)), letter(Letter::b(1)));
    let p = &(&a * &b) + &(&b * &a);
    recipe_vs_oracle(&pred, &p, m_max, &model, &two_moment_state(tb, tb2))
}

pub fn commutator_instance(rng: &mut impl Rng, m_max: u32, _degree: usize) -> Result<f64> {
    let model = random_family(1, rng);
    let (tb, tb2) = tau_pair(rng);
    let ev = model.generator_spectrum(1, 0)?;
    let pred = ev_commutator(&ev, tb, tb2)?;
    let (a, b) = (letter(Letter::a(1)), letter(Letter::b(1)));
    let p = (&(&a * &b) - &(&b * &a)).scale(C64::new(0.0, 1.0));
    recipe_vs_oracle(&pred, &p, m_max, &model, &two_moment_state(tb, tb2))
}

/// Table with `τ(bᵢ* bⱼ) = gram[i][j]` for non-selfadjoint `b1..bk`.
fn gram_table(gram: &CMatrix, selfadjoint: BTreeSet<u32>) -> MomentTable {
    let k = gram.nrows();
    let mut t = MomentTable::new(2, Some(selfadjoint));
    for i in 0..k {
        for j in 0..k {
            let w = word(&[Letter::b(i as u32 + 1).star(), Letter::b(j as u32 + 1)]);
            t.insert(&w, gram[(i, j)]).unwrap();
        }
    }
    t
}

/// `Σ bᵢ dᵢ bᵢ*` with `dᵢ = ±pᵢpᵢ*` and `b`'s with a random Gram matrix.
pub fn sum_bab_instance(rng: &mut impl Rng, m_max: u32, degree: usize) -> Result<f64> {
    let k = rng.random_range(1..=3);
    let model = random_family(k, rng);
    let diagonal: Vec<NCPolynomial> = (0..k)
        .map(|_| {
            let p = random_a_poly(k, degree, rng);
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            (&p * &p.adjoint()).scale(re(sign))
        })
        .collect();
    let gram = random_gram(k, rng);
    let pred = ev_sum_bab(&model, &diagonal, &gram, 0)?;
    let mut x = NCPolynomial::zero();
    for (i, d) in diagonal.iter().enumerate() {
        let b = letter(Letter::b(i as u32 + 1));
        x = &x + &(&(&b * d) * &b.adjoint());
    }
    let state = TracialState::MomentTable(gram_table(&gram, BTreeSet::new()));
    recipe_vs_oracle(&pred, &x, m_max, &model, &state)
}

/// `Σ pᵢ bᵢ pᵢ*` with selfadjoint `bᵢ`.
pub fn sum_aba_instance(rng: &mut impl Rng, m_max: u32, degree: usize) -> Result<f64> {
    let k = rng.random_range(1..=3);
    let model = random_family(k, rng);
    let a: Vec<NCPolynomial> = (0..k).map(|_| random_a_poly(k, degree, rng)).collect();
    let taus: Vec<f64> = (0..k).map(|_| rng.random_range(-2.0..2.0)).collect();
    let pred = ev_sum_aba(&model, &a, &taus, 0)?;
    let mut table = MomentTable::new(1, None);
    let mut x = NCPolynomial::zero();
    for (i, (p, &t)) in a.iter().zip(&taus).enumerate() {
        let l = Letter::b(i as u32 + 1);
        table.insert(&word(&[l]), re(t)).unwrap();
        x = &x + &(&(p * &letter(l)) * &p.adjoint());
    }
    recipe_vs_oracle(&pred, &x, m_max, &model, &TracialState::MomentTable(table))
}

/// `Σ bᵢ a cᵢ` with `cᵢ = b_{k+i}` and a symmetric `B′ᵢⱼ = τ(cᵢbⱼ)`.
pub fn sum_bac_instance(rng: &mut impl Rng, m_max: u32, _degree: usize) -> Result<f64> {
    let k = rng.random_range(1..=3usize);
    let model = random_family(1, rng);
    let mut bprime = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v: f64 = rng.sample(StandardNormal);
            bprime[(i, j)] = re(v);
            bprime[(j, i)] = re(v);
        }
    }
    let mut table = MomentTable::new(2, None);
    let mut x = NCPolynomial::zero();
    let a = letter(Letter::a(1));
    for i in 0..k {
        let c = Letter::b((k + i) as u32 + 1);
        for j in 0..k {
            table
                .insert(&word(&[c, Letter::b(j as u32 + 1)]), bprime[(i, j)])
                .unwrap();
        }
        x = &x + &(&(&letter(Letter::b(i as u32 + 1)) * &a) * &letter(c));
    }
    let ev = model.generator_spectrum(1, 0)?;
    let pred = ev_sum_bac(&ev, &bprime)?;
    recipe_vs_oracle(&pred, &x, m_max, &model, &TracialState::MomentTable(table))
}

/// `Σ bᵢ pᵢ cᵢ pᵢ* bᵢ*` with selfadjoint `cᵢ = b_{k+i}`.
pub fn conjugated_sum_instance(rng: &mut impl Rng, m_max: u32, degree: usize) -> Result<f64> {
    let k = rng.random_range(1..=3usize);
    let model = random_family(k, rng);
    let a: Vec<NCPolynomial> = (0..k).map(|_| random_a_poly(k, degree, rng)).collect();
    let c_taus: Vec<f64> = (0..k).map(|_| rng.random_range(-2.0..2.0)).collect();
    let gram = random_gram(k, rng);
    let selfadjoint: BTreeSet<u32> = (k as u32 + 1..=2 * k as u32).collect();
    let mut table = gram_table(&gram, selfadjoint);
    let mut x = NCPolynomial::zero();
    for i in 0..k {
        let c = Letter::b((k + i) as u32 + 1);
        table.insert(&word(&[c]), re(c_taus[i])).unwrap();
        let b = letter(Letter::b(i as u32 + 1));
        let inner = &(&a[i] * &letter(c)) * &a[i].adjoint();
        x = &x + &(&(&b * &inner) * &b.adjoint());
    }
    let pred = ev_conjugated_sum(&model, &a, &c_taus, &gram, 0)?;
    recipe_vs_oracle(&pred, &x, m_max, &model, &TracialState::MomentTable(table))
}

/// Upper bound on the number of words in the expanded trace of
/// `(A₁B₁⋯A_kB_k)^m`.
pub fn chain_term_bound(chain: &[AlgMatrix], m: u32) -> f64 {
    let d = chain[0].dim();
    let counts =
        |a: &AlgMatrix| nalgebra::DMatrix::from_fn(d, d, |i, j| a.get(i, j).num_terms() as f64);
    let mut prod = nalgebra::DMatrix::<f64>::identity(d, d);
    for a in chain {
        prod *= counts(a);
    }
    let mut p = prod.clone();
    for _ in 1..m {
        p *= &prod;
    }
    p.trace()
}

fn random_entry(pure_a: bool, rng: &mut impl Rng) -> NCPolynomial {
    if rng.random_bool(0.35) {
        return NCPolynomial::zero();
    }
    let mut p = NCPolynomial::zero();
    for _ in 0..rng.random_range(1..=2) {
        let len = if pure_a {
            rng.random_range(1..=2)
        } else {
            rng.random_range(0..=2)
        };
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                let l = if pure_a {
                    Letter::a(rng.random_range(1..=2))
                } else {
                    Letter::b(rng.random_range(1..=2))
                };
                if rng.random_bool(0.3) {
                    l.star()
                } else {
                    l
                }
            })
            .collect();
        p.add_term(Word::new(letters), cnormal(rng));
    }
    p
}

/// Random alternating chain, `k ≤ 3`, `dim ≤ 3`, entries of degree `≤ 2`,
/// resampled until the unreduced expansion at `m_max` stays small.
pub fn random_chain(rng: &mut impl Rng, m_max: u32) -> Vec<AlgMatrix> {
    loop {
        let k = rng.random_range(1..=3);
        let d = rng.random_range(1..=3);
        let chain: Vec<AlgMatrix> = (0..2 * k)
            .map(|p| {
                AlgMatrix::new(
                    d,
                    (0..d * d).map(|_| random_entry(p % 2 == 0, rng)).collect(),
                )
                .unwrap()
            })
            .collect();
        let bound = chain_term_bound(&chain, m_max);
        if bound > 0.0 && bound <= 4000.0 {
            return chain;
        }
    }
}

/// A-model and B-state for chains over `a1, a2` and `b1, b2`.
pub fn chain_models(rng: &mut impl Rng) -> (TraceClassModel, TracialState) {
    let model = random_family(2, rng);
    let m = rng.random_range(2..=4);
    let state = TracialState::matrices((0..2).map(|_| random_matrix(m, rng)).collect()).unwrap();
    (model, state)
}

pub fn spectrum_of(m: &CMatrix) -> Vec<f64> {
    hermitian_spectrum(m).unwrap().values().to_vec()
}
