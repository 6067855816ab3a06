//! The four sum recipes on small inputs, each checked against the oracle.

use std::collections::BTreeSet;

use cyclic_ev::cmcalc::{
    poly_moment, MomentTable, Spectrum, TraceClassModel, TracialState, Truncation,
};
use cyclic_ev::linred::{
    ev_conjugated_sum, ev_sum_aba, ev_sum_bab, ev_sum_bac, Prediction, ScalarMatrix,
};
use cyclic_ev::ncalg::{parse_expression, NCPolynomial, Symbols, Word};
use cyclic_ev::C64;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn show(
    name: &str,
    pred: &Prediction,
    p: &NCPolynomial,
    model: &TraceClassModel,
    state: &TracialState,
) -> Res<()> {
    println!("{name}: {p}");
    println!("  top eigenvalues {:?}", &pred.multiset.values()[..4]);
    for m in 1..=3 {
        let oracle = poly_moment(p, m, model, state)?.re;
        println!(
            "  m={m}: Σλ^m = {:+.10}  oracle = {oracle:+.10}",
            pred.moment(m)
        );
    }
    Ok(())
}

fn real(rows: &[&[f64]]) -> ScalarMatrix {
    ScalarMatrix::from_fn(rows.len(), rows.len(), |i, j| C64::new(rows[i][j], 0.0))
}

fn main() -> Res<()> {
    let n = 24;
    let model = TraceClassModel::haar_conjugated(
        vec![Spectrum::geometric(1.0, 0.5), Spectrum::geometric(0.5, 0.3)],
        Truncation::Finite(n),
    )?;
    let syms = Symbols::standard(2, 4);
    let parse = |t: &str| parse_expression(t, &syms);
    let word = |t: &str| -> Res<Word> {
        let p = parse(t)?;
        let w = p.terms().next().expect("one term").0.clone();
        Ok(w)
    };

    // Σ bᵢ dᵢ bᵢ with τ(bᵢbⱼ) = G
    let g = [[1.0, 0.5], [0.5, 2.0]];
    let mut table = MomentTable::new(2, Some(BTreeSet::from([1, 2])));
    for i in 1..=2 {
        table.insert(&word(&format!("b{i}"))?, C64::new(0.0, 0.0))?;
        for j in 1..=2 {
            table.insert(
                &word(&format!("b{i}*b{j}"))?,
                C64::new(g[i - 1][j - 1], 0.0),
            )?;
        }
    }
    let state = TracialState::MomentTable(table);
    let diag = vec![parse("a1")?, parse("a2")?];
    let pred = ev_sum_bab(&model, &diag, &real(&[&g[0], &g[1]]), n)?;
    show(
        "sum_bab",
        &pred,
        &parse("b1*a1*b1 + b2*a2*b2")?,
        &model,
        &state,
    )?;

    // Σ aᵢ bᵢ aᵢ* with τ(bᵢ) given
    let table = MomentTable::new(1, None)
        .with(&word("b1")?, 1.5)?
        .with(&word("b2")?, 0.5)?;
    let state = TracialState::MomentTable(table);
    let a = vec![parse("a1")?, parse("a2*a1")?];
    let pred = ev_sum_aba(&model, &a, &[1.5, 0.5], n)?;
    show(
        "sum_aba",
        &pred,
        &parse("a1*b1*a1' + a2*a1*b2*a1'*a2'")?,
        &model,
        &state,
    )?;

    // Σ bᵢ a cᵢ with cᵢ = b_{2+i}, B' = [τ(cᵢ bⱼ)]
    let bp = [[1.0, 2.0], [2.0, 1.0]];
    let mut table = MomentTable::new(2, None);
    for i in 1..=2 {
        for j in 1..=2 {
            table.insert(
                &word(&format!("b{}*b{j}", i + 2))?,
                C64::new(bp[i - 1][j - 1], 0.0),
            )?;
            table.insert(
                &word(&format!("b{j}*b{}", i + 2))?,
                C64::new(bp[i - 1][j - 1], 0.0),
            )?;
        }
    }
    let state = TracialState::MomentTable(table);
    let a1 = model.generator_spectrum(1, n)?;
    let pred = ev_sum_bac(&a1, &real(&[&bp[0], &bp[1]]))?;
    show(
        "sum_bac",
        &pred,
        &parse("b1*a1*b3 + b2*a1*b4")?,
        &model,
        &state,
    )?;

    // Σ bᵢ aᵢ cᵢ aᵢ* bᵢ* with cᵢ = b_{2+i} selfadjoint
    let c = [2.0, -1.0];
    let mut table = MomentTable::new(2, Some(BTreeSet::from([3, 4])));
    for i in 1..=2 {
        table.insert(&word(&format!("b{}", i + 2))?, C64::new(c[i - 1], 0.0))?;
        for j in 1..=2 {
            table.insert(
                &word(&format!("b{i}'*b{j}"))?,
                C64::new(g[i - 1][j - 1], 0.0),
            )?;
        }
    }
    let state = TracialState::MomentTable(table);
    let pred = ev_conjugated_sum(&model, &diag, &c, &real(&[&g[0], &g[1]]), n)?;
    let p = parse("b1*a1*b3*a1'*b1' + b2*a2*b4*a2'*b2'")?;
    show("conjugated_sum", &pred, &p, &model, &state)
}
