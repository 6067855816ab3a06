//! Property runners. Each returns `Err` with the shrunk counterexample.

use std::collections::BTreeSet;

use cyclic_ev::cmcalc::{
    cm_moment, collapse_internal_b_runs, conjugate_composite, poly_moment, CompositeFamily,
    TraceClassModel, TraceWeight, Tracial, TracialState,
};
use cyclic_ev::linred::{
    chain_moment, chain_moment_unreduced, ev_anticommutator, ev_chain, ev_commutator, ev_sum_bab,
    ev_sum_bac, AlgMatrix,
};
use cyclic_ev::ncalg::{parse_expression, Generator, Letter, NCPolynomial, Symbols, Word};
use cyclic_ev::numeric::{kron_identity, trace_power};
use cyclic_ev::rmtlab::{run_scenario, sample_haar_unitary, trial_rng};
use cyclic_ev::spectra::{general_eigenvalues, hermitian_spectrum, EVMultiset, Source};
use cyclic_ev::{CMatrix, C64};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use super::*;

pub type PropResult = std::result::Result<(), String>;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>,
) -> PropResult
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn fail(e: cyclic_ev::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn letter_strategy(max_index: u32) -> impl Strategy<Value = Letter> {
    (any::<bool>(), 1..=max_index, any::<bool>()).prop_map(|(is_a, i, star)| {
        let l = if is_a { Letter::a(i) } else { Letter::b(i) };
        if star {
            l.star()
        } else {
            l
        }
    })
}

pub fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(2), 0..=max_len).prop_map(Word::new)
}

fn coefficient() -> impl Strategy<Value = C64> {
    (-8i32..=8, -8i32..=8, 0..3u32).prop_map(|(x, y, shift)| {
        let d = f64::from(1u32 << shift);
        C64::new(f64::from(x) / d, f64::from(y) / d)
    })
}

/// Polynomials of degree `≤ max_degree` in `a1, a2, b1, b2` and adjoints.
pub fn poly_strategy(max_degree: usize) -> impl Strategy<Value = NCPolynomial> {
    prop::collection::vec((word_strategy(max_degree), coefficient()), 0..=4)
        .prop_map(NCPolynomial::from_terms)
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

/// Two Hermitian A-matrices and two general B-matrices, all small.
fn matrix_models(seed: u64) -> (TraceClassModel, TracialState) {
    let mut r = rng(seed);
    let model = random_family(2, &mut r);
    let m = r.random_range(2..=4);
    let state = TracialState::matrices((0..2).map(|_| random_matrix(m, &mut r)).collect()).unwrap();
    (model, state)
}

// ---- ncalg ----

pub fn word_adjoint_involution(cases: u32) -> PropResult {
    run(cases, (word_strategy(12), word_strategy(12)), |(u, v)| {
        check(u.adjoint().adjoint() == u, || format!("{u}"))?;
        check(u.concat(&v).len() == u.len() + v.len(), || "length".into())?;
        check(
            u.concat(&v).adjoint() == v.adjoint().concat(&u.adjoint()),
            || format!("(uv)* for {u}, {v}"),
        )
    })
}

pub fn poly_adjoint_involution(cases: u32) -> PropResult {
    run(cases, (poly_strategy(3), poly_strategy(3)), |(p, q)| {
        check(p.adjoint().adjoint() == p, || format!("{p}"))?;
        check((&p * &q).adjoint() == &q.adjoint() * &p.adjoint(), || {
            format!("(pq)* for {p} and {q}")
        })
    })
}

pub fn parser_round_trip(cases: u32) -> PropResult {
    let syms = Symbols::standard(2, 2);
    run(cases, poly_strategy(6), |p| {
        let text = p.to_string();
        let back =
            parse_expression(&text, &syms).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(back == p, || format!("`{text}` re-parsed as `{back}`"))
    })
}

pub fn alternating_form_reconstructs(cases: u32) -> PropResult {
    run(cases, word_strategy(12), |w| {
        let f = w.alternating_form();
        check(f.reconstruct() == w, || format!("{w}"))?;
        check(f.leading_b.is_pure_b(), || "leading run".into())?;
        for (i, (a, b)) in f.blocks.iter().enumerate() {
            check(a.is_pure_a() && b.is_pure_b(), || {
                format!("block {i} of {w}")
            })?;
            check(i + 1 == f.blocks.len() || !b.is_unit(), || {
                format!("A-runs {i} and {} are not maximal in {w}", i + 1)
            })?;
        }
        Ok(())
    })
}

pub fn power_recursion(cases: u32) -> PropResult {
    run(cases, (poly_strategy(2), 1u32..=3), |(p, m)| {
        check(p.power(m + 1) == p.power(m).multiply(&p), || {
            format!("{p}^{}", m + 1)
        })
    })
}

// ---- cmcalc ----

fn word_with_a() -> impl Strategy<Value = Word> {
    word_strategy(8).prop_filter("needs an A-letter", |w| w.has_a())
}

pub fn cyclic_invariance(cases: u32) -> PropResult {
    run(cases, (word_with_a(), seed()), |(w, s)| {
        let (model, state) = matrix_models(s);
        let base = cm_moment(&w, &model, &state).map_err(fail)?;
        for j in 1..w.len() {
            let r = cm_moment(&w.rotate(j), &model, &state).map_err(fail)?;
            check(rel_err(base, r, 0.0) <= 1e-10, || {
                format!("rotation {j} of {w}: {base} vs {r}")
            })?;
        }
        Ok(())
    })
}

/// Naive evaluation of an alternating word straight from matrices: Tr of
/// the A-letters times the normalized traces of the B-runs after rotation.
fn naive_factorized(w: &Word, a: &[CMatrix], b: &[CMatrix]) -> C64 {
    let letters = w.letters();
    let start = letters.iter().position(|l| l.is_a()).unwrap();
    let rotated: Vec<Letter> = letters[start..]
        .iter()
        .chain(&letters[..start])
        .copied()
        .collect();
    let mat = |l: &Letter, pool: &[CMatrix]| {
        let m = &pool[l.index as usize - 1];
        if l.starred {
            m.adjoint()
        } else {
            m.clone()
        }
    };
    let na = a[0].nrows();
    let nb = b[0].nrows();
    let mut a_prod = CMatrix::identity(na, na);
    let mut scalar = C64::new(1.0, 0.0);
    let mut run: Option<CMatrix> = None;
    for l in &rotated {
        if l.is_a() {
            if let Some(r) = run.take() {
                scalar *= r.trace() / nb as f64;
            }
            a_prod *= mat(l, a);
        } else {
            let m = mat(l, b);
            run = Some(match run {
                None => m,
                Some(r) => r * m,
            });
        }
    }
    if let Some(r) = run {
        scalar *= r.trace() / nb as f64;
    }
    a_prod.trace() * scalar
}

pub fn factorization_matches_naive(cases: u32) -> PropResult {
    run(
        cases,
        (word_strategy(10).prop_filter("A", |w| w.has_a()), seed()),
        |(w, s)| {
            let mut r = rng(s);
            let n = r.random_range(2..=6);
            let a: Vec<CMatrix> = (0..2).map(|_| random_hermitian(n, &mut r)).collect();
            let b: Vec<CMatrix> = (0..2).map(|_| random_matrix(3, &mut r)).collect();
            let model = TraceClassModel::matrix_family(a.clone()).unwrap();
            let state = TracialState::matrices(b.clone()).unwrap();
            let got = cm_moment(&w, &model, &state).map_err(fail)?;
            let want = naive_factorized(&w, &a, &b);
            check(rel_err(got, want, 0.0) <= 1e-10, || {
                format!("{w}: {got} vs {want}")
            })
        },
    )
}

fn admissible_word() -> impl Strategy<Value = Word> {
    word_strategy(6).prop_filter("starts and ends with A", |w| {
        matches!((w.letters().first(), w.letters().last()), (Some(f), Some(l)) if f.is_a() && l.is_a())
    })
}

fn b_run() -> impl Strategy<Value = Word> {
    prop::collection::vec(
        (1u32..=2, any::<bool>())
            .prop_map(|(i, s)| if s { Letter::b(i).star() } else { Letter::b(i) }),
        1..=2,
    )
    .prop_map(Word::new)
}

pub fn substitution_soundness(cases: u32) -> PropResult {
    let strategy = (
        admissible_word(),
        b_run(),
        word_with_a().prop_filter("pure A", |w| w.is_pure_a()),
        b_run(),
        seed(),
    );
    run(cases, strategy, |(w, beta1, u, beta2, s)| {
        let (model, state) = matrix_models(s);
        let (scalar, reduced) = collapse_internal_b_runs(&w, &state).map_err(fail)?;
        let ctx = |x: &Word| x.concat(&beta1).concat(&u).concat(&beta2);
        let full = cm_moment(&ctx(&w), &model, &state).map_err(fail)?;
        let sub = scalar * cm_moment(&ctx(&reduced), &model, &state).map_err(fail)?;
        let scale = full.norm().max(sub.norm());
        check((full - sub).norm() <= 1e-12 * scale.max(1.0), || {
            format!("{w}: {full} vs {sub}")
        })
    })
}

pub fn conjugation_soundness(cases: u32) -> PropResult {
    run(
        cases,
        (prop::collection::vec(letter_strategy(2), 1..=3), seed()),
        |(a, s)| {
            let a = Word::new(
                a.into_iter()
                    .map(|l| if l.is_b() { Letter::a(l.index) } else { l })
                    .collect(),
            );
            let (model, state) = matrix_models(s);
            let b1 = Word::new(vec![Letter::b(1)]);
            let b2 = Word::new(vec![Letter::b(2)]);
            let b1s = Word::new(vec![Letter::b(1).star()]);
            let expansion = conjugate_composite(&a, &b1).map_err(fail)?;
            let mut fam = CompositeFamily::new(&model, &state);
            fam.register(9, C64::new(1.0, 0.0), expansion)
                .map_err(fail)?;
            let x = Word::new(vec![Letter::a(9)]);
            let ctx = x.concat(&b2).concat(&x).concat(&b1s);
            let got = cm_moment(&ctx, &fam, &state).map_err(fail)?;
            // ω(aa*aa*) τ(b1)² τ(b2) τ(b1*)
            let aa = a.concat(&a.adjoint());
            let want = model.omega(&aa.concat(&aa)).map_err(fail)?
                * state.tau(&b1).map_err(fail)?.powi(2)
                * state.tau(&b2).map_err(fail)?
                * state.tau(&b1s).map_err(fail)?;
            check(rel_err(got, want, 0.0) <= 1e-12, || {
                format!("{a}: {got} vs {want}")
            })
        },
    )
}

pub fn positivity_smoke(cases: u32) -> PropResult {
    let real_poly = prop::collection::vec((word_strategy(3), -4i32..=4), 1..=4).prop_map(|t| {
        NCPolynomial::from_terms(t.into_iter().map(|(w, c)| (w, C64::new(f64::from(c), 0.0))))
    });
    run(cases, (real_poly, seed()), |(q, s)| {
        let p = &q + &q.adjoint();
        if p.terms().any(|(w, _)| w.is_pure_b()) {
            return Ok(());
        }
        let mut r = rng(s);
        let n = r.random_range(2..=5);
        let real_sym = |r: &mut ChaCha20Rng, n: usize| {
            let m = CMatrix::from_fn(n, n, |_, _| C64::new(r.random_range(-1.0..1.0), 0.0));
            &m + m.transpose()
        };
        let model =
            TraceClassModel::matrix_family(vec![real_sym(&mut r, n), real_sym(&mut r, n)]).unwrap();
        let state = TracialState::matrices(vec![real_sym(&mut r, 3), real_sym(&mut r, 3)]).unwrap();
        let m2 = poly_moment(&p, 2, &model, &state).map_err(fail)?;
        check(m2.re >= -1e-10 && m2.im.abs() <= 1e-10, || {
            format!("{p}: {m2}")
        })
    })
}

// ---- linred ----

pub fn reduction_soundness(cases: u32) -> PropResult {
    run(cases, seed(), |s| {
        let mut r = rng(s);
        let chain = random_chain(&mut r, 3);
        let (model, state) = chain_models(&mut r);
        for m in 1..=3 {
            let x = chain_moment(&chain, m, &model, &state).map_err(fail)?;
            let y = chain_moment_unreduced(&chain, m, &model, &state).map_err(fail)?;
            check(rel_err(x, y, 1e-300) <= 1e-9, || {
                format!("m={m}: {x} vs {y}")
            })?;
        }
        Ok(())
    })
}

pub fn recipes_match_oracle(cases: u32, m_max: u32, degree: usize) -> PropResult {
    type Instance = fn(&mut ChaCha20Rng, u32, usize) -> cyclic_ev::Result<f64>;
    let recipes: [(&str, Instance); 6] = [
        ("anticommutator", anticommutator_instance),
        ("commutator", commutator_instance),
        ("sum_bab", sum_bab_instance),
        ("sum_aba", sum_aba_instance),
        ("sum_bac", sum_bac_instance),
        ("conjugated_sum", conjugated_sum_instance),
    ];
    run(cases, seed(), |s| {
        for (name, f) in recipes {
            let err = f(&mut rng(s), m_max, degree).map_err(fail)?;
            check(err <= 1e-9, || format!("{name}: relative error {err:e}"))?;
        }
        Ok(())
    })
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

pub fn sum_bab_similarity(cases: u32) -> PropResult {
    run(cases, seed(), |s| {
        let mut r = rng(s);
        let k = r.random_range(1..=3);
        let model = random_family(k, &mut r);
        let diagonal: Vec<NCPolynomial> = (1..=k as u32).map(|i| letter(Letter::a(i))).collect();
        let gram = random_gram(k, &mut r);
        let pred = ev_sum_bab(&model, &diagonal, &gram, 0).map_err(fail)?;
        let mats = model.realize(0);
        let d = model.realization_dim(0);
        let db = cyclic_ev::numeric::block_diagonal(&mats) * kron_identity(&gram, d);
        let nonzero = |v: Vec<f64>| sorted(v.into_iter().filter(|x| x.abs() > 1e-8).collect());
        let want = nonzero(
            general_eigenvalues(&db)
                .unwrap()
                .iter()
                .map(|z| z.re)
                .collect(),
        );
        let got = nonzero(pred.multiset.values().to_vec());
        check(got.len() == want.len(), || {
            format!("{} vs {} nonzero", got.len(), want.len())
        })?;
        for (x, y) in got.iter().zip(&want) {
            check((x - y).abs() <= 1e-9 * x.abs().max(1.0), || {
                format!("{x} vs {y}")
            })?;
        }
        Ok(())
    })
}

fn same_multiset(x: &EVMultiset, y: &EVMultiset, tol: f64) -> bool {
    x.len() == y.len()
        && sorted(x.values().to_vec())
            .iter()
            .zip(&sorted(y.values().to_vec()))
            .all(|(a, b)| (a - b).abs() <= tol * a.abs().max(1.0))
}

pub fn recipe_scaling(cases: u32) -> PropResult {
    run(cases, (seed(), -3.0f64..3.0), |(s, c)| {
        let mut r = rng(s);
        let model = random_family(2, &mut r);
        let scaled = model.scaled(c);
        let ev = model.generator_spectrum(1, 0).map_err(fail)?;
        let ev_c = scaled.generator_spectrum(1, 0).map_err(fail)?;
        let (tb, tb2) = (r.random_range(-1.0..1.0), 1.5);
        let pairs = [
            (
                ev_anticommutator(&ev, tb, tb2),
                ev_anticommutator(&ev_c, tb, tb2),
            ),
            (ev_commutator(&ev, tb, tb2), ev_commutator(&ev_c, tb, tb2)),
            (
                ev_sum_bac(&ev, &CMatrix::identity(2, 2)),
                ev_sum_bac(&ev_c, &CMatrix::identity(2, 2)),
            ),
        ];
        let diag = [letter(Letter::a(1)), letter(Letter::a(2))];
        let gram = random_gram(2, &mut r);
        let bab = (
            ev_sum_bab(&model, &diag, &gram, 0),
            ev_sum_bab(&scaled, &diag, &gram, 0),
        );
        for (x, y) in pairs.into_iter().chain([bab]) {
            let (x, y) = (x.map_err(fail)?, y.map_err(fail)?);
            check(
                same_multiset(&x.multiset.scale(c), &y.multiset, 1e-9),
                || format!("{}: scaling by {c}", x.recipe),
            )?;
        }
        Ok(())
    })
}

/// Closed forms against `ev_chain` on the 2×2 linearizations
/// `[1 b; 0 0]·diag(a, a)·[b 0; 1 0]` and `[1 b; 0 0]·[0 ia; −ia 0]·[1 0; b 0]`.
pub fn closed_forms_match_linearization(cases: u32) -> PropResult {
    let syms = Symbols::standard(1, 1);
    let parse = |rows: &[&[&str]]| {
        AlgMatrix::parse(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), &syms).unwrap()
    };
    let b0 = parse(&[&["1", "b1"], &["0", "0"]]);
    let anti = [
        parse(&[&["a1", "0"], &["0", "a1"]]),
        parse(&[&["b1", "0"], &["1", "0"]]),
    ];
    let comm = [
        parse(&[&["0", "i*a1"], &["-i*a1", "0"]]),
        parse(&[&["1", "0"], &["b1", "0"]]),
    ];
    let gens: BTreeSet<Generator> = [Generator::a(1), Generator::b(1)].into();
    run(
        cases,
        (-2.0f64..2.0, 0.0f64..2.0, 4usize..=24),
        |(tb, var, n)| {
            let tb2 = tb * tb + var;
            let model = TraceClassModel::spectrum(
                vec![cyclic_ev::cmcalc::Spectrum::geometric(1.0, 0.5)],
                cyclic_ev::cmcalc::Truncation::Finite(n),
            )
            .unwrap();
            let state = TracialState::two_moments(tb, tb2);
            let ev = model.generator_spectrum(1, n).map_err(fail)?;
            let chain_a = ev_chain(&b0, &anti, &model, &state, n, Some(&gens)).map_err(fail)?;
            let chain_c = ev_chain(&b0, &comm, &model, &state, n, Some(&gens)).map_err(fail)?;
            let closed_a = ev_anticommutator(&ev, tb, tb2).map_err(fail)?;
            let closed_c = ev_commutator(&ev, tb, tb2).map_err(fail)?;
            for (x, y) in [(&chain_a, &closed_a), (&chain_c, &closed_c)] {
                let (xs, ys) = (
                    sorted(x.multiset.values().to_vec()),
                    sorted(y.multiset.values().to_vec()),
                );
                check(xs.len() == ys.len(), || "size".into())?;
                for (p, q) in xs.iter().zip(&ys) {
                    check((p - q).abs() <= 1e-12 * q.abs().max(1.0) + 1e-12, || {
                        format!("{}: {p} vs {q}", y.recipe)
                    })?;
                }
            }
            Ok(())
        },
    )
}

// ---- spectra ----

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 0..12)
}

pub fn multiset_algebra(cases: u32) -> PropResult {
    run(
        cases,
        (values(), values(), -3.0f64..3.0, -3.0f64..3.0, 1u32..=4),
        |(x, y, c, d, k)| {
            let s = EVMultiset::new(x, Source::Predicted);
            let t = EVMultiset::new(y, Source::Predicted);
            let u = s.disjoint_union(&t);
            check(u.len() == s.len() + t.len(), || "union size".into())?;
            check(u == t.disjoint_union(&s), || "union commutes".into())?;
            // summation order changes after re-sorting, so allow the last bits
            let abs_sum: f64 = u.values().iter().map(|v| v.abs().powi(k as i32)).sum();
            check(
                (u.moment(k) - s.moment(k) - t.moment(k)).abs() <= 1e-12 * abs_sum,
                || "union moment".into(),
            )?;
            let sc = s.scale(c);
            let expect = c.powi(k as i32) * s.moment(k);
            let scale: f64 = sc.values().iter().map(|v| v.abs().powi(k as i32)).sum();
            check(
                (sc.moment(k) - expect).abs() <= 1e-12 * scale.max(1e-300),
                || "scale moment".into(),
            )?;
            let twice = s.scale(d).scale(c);
            let once = s.scale(c * d);
            check(
                twice
                    .values()
                    .iter()
                    .zip(once.values())
                    .all(|(p, q)| (p - q).abs() <= 1e-12 * q.abs().max(1.0)),
                || "scale composition".into(),
            )?;
            let sorted_ok = s
                .values()
                .windows(2)
                .all(|w| cyclic_ev::spectra::canonical_cmp(&w[0], &w[1]).is_le());
            check(sorted_ok, || "canonical order".into())
        },
    )
}

pub fn hermitian_similarity_and_trace(cases: u32) -> PropResult {
    run(cases, (seed(), 1usize..=24), |(s, n)| {
        let mut r = rng(s);
        let m = random_hermitian(n, &mut r);
        let u = sample_haar_unitary(n, &mut trial_rng(s, 1));
        let sp = hermitian_spectrum(&m).map_err(fail)?;
        let conj = &u * &m * u.adjoint();
        let sp2 = hermitian_spectrum(&cyclic_ev::numeric::hermitian_part(&conj)).map_err(fail)?;
        let (a, b) = (sorted(sp.values().to_vec()), sorted(sp2.values().to_vec()));
        check(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-8), || {
            "similarity".into()
        })?;
        let tr = m.trace().re;
        let sum: f64 = sp.values().iter().sum();
        let scale: f64 = sp.values().iter().map(|v| v.abs()).sum();
        check((tr - sum).abs() <= 1e-8 * scale.max(1e-12), || {
            format!("trace {tr} vs {sum}")
        })
    })
}

// ---- rmtlab ----

fn small_scenario(seed: u64) -> cyclic_ev::rmtlab::Scenario {
    let mut s = cyclic_ev::rmtlab::demo_scenario("example3").unwrap();
    s.n = 24;
    s.trials = 2;
    s.seed = seed;
    s
}

pub fn determinism(cases: u32) -> PropResult {
    run(cases, seed(), |s| {
        let sc = small_scenario(s);
        let a = serde_json::to_string(&run_scenario(&sc).map_err(fail)?).unwrap();
        let b = serde_json::to_string(&run_scenario(&sc).map_err(fail)?).unwrap();
        check(a == b, || "reports differ".into())
    })
}

pub fn trial_streams_differ(cases: u32) -> PropResult {
    run(cases, (seed(), 0u64..1000, 1u64..1000), |(s, t, dt)| {
        let x: [u64; 4] = trial_rng(s, t).random();
        let y: [u64; 4] = trial_rng(s, t + dt).random();
        check(x != y, || format!("streams {t} and {}", t + dt))
    })
}

pub fn report_moments_match_spectrum(cases: u32) -> PropResult {
    run(cases, seed(), |s| {
        let mut sc = small_scenario(s);
        sc.expression = "a1 + b1*a1*b1*a1*b1".into();
        let report = run_scenario(&sc).map_err(fail)?;
        for t in &report.trials {
            let spec = EVMultiset::new(t.eigenvalues.clone(), Source::Empirical);
            for k in 1..=3u32 {
                let x = t.moments[k as usize - 1];
                let y = spec.moment(k);
                let scale: f64 = t.eigenvalues.iter().map(|v| v.abs().powi(k as i32)).sum();
                check((x - y).abs() <= 1e-6 * scale.max(1e-12), || {
                    format!("k={k}: {x} vs {y}")
                })?;
            }
        }
        Ok(())
    })
}

/// `Tr(X^k)` from repeated products agrees with the eigenvalue sum.
pub fn trace_power_matches_spectrum(cases: u32) -> PropResult {
    run(cases, (seed(), 1usize..=20, 1u32..=4), |(s, n, k)| {
        let m = random_hermitian(n, &mut rng(s));
        let x = trace_power(&m, k).re;
        let sp = hermitian_spectrum(&m).map_err(fail)?;
        let scale: f64 = sp.values().iter().map(|v| v.abs().powi(k as i32)).sum();
        check((x - sp.moment(k)).abs() <= 1e-10 * scale.max(1e-12), || {
            format!("{x}")
        })
    })
}

pub type Suite = Box<dyn Fn() -> PropResult>;

/// Every runner with its default case count, in the order the suites report.
pub fn all() -> Vec<(&'static str, Suite)> {
    vec![
        (
            "word adjoint involution",
            Box::new(|| word_adjoint_involution(256)),
        ),
        (
            "polynomial adjoint involution",
            Box::new(|| poly_adjoint_involution(128)),
        ),
        ("parser round trip", Box::new(|| parser_round_trip(256))),
        (
            "alternating form reconstruction",
            Box::new(|| alternating_form_reconstructs(256)),
        ),
        ("power recursion", Box::new(|| power_recursion(64))),
        ("cyclic invariance", Box::new(|| cyclic_invariance(128))),
        (
            "factorization vs naive",
            Box::new(|| factorization_matches_naive(128)),
        ),
        (
            "substitution soundness",
            Box::new(|| substitution_soundness(128)),
        ),
        (
            "conjugation soundness",
            Box::new(|| conjugation_soundness(64)),
        ),
        ("positivity", Box::new(|| positivity_smoke(64))),
        ("reduction soundness", Box::new(|| reduction_soundness(24))),
        (
            "recipes vs oracle m<=6",
            Box::new(|| recipes_match_oracle(20, 6, 1)),
        ),
        ("sum_bab similarity", Box::new(|| sum_bab_similarity(64))),
        ("recipe scaling", Box::new(|| recipe_scaling(64))),
        (
            "closed forms vs linearization",
            Box::new(|| closed_forms_match_linearization(32)),
        ),
        ("multiset algebra", Box::new(|| multiset_algebra(256))),
        (
            "hermitian similarity and trace",
            Box::new(|| hermitian_similarity_and_trace(64)),
        ),
        (
            "trace power vs spectrum",
            Box::new(|| trace_power_matches_spectrum(64)),
        ),
        ("trial streams", Box::new(|| trial_streams_differ(256))),
        ("determinism", Box::new(|| determinism(3))),
        (
            "report moments vs spectrum",
            Box::new(|| report_moments_match_spectrum(3)),
        ),
    ]
}
