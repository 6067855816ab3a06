//! `X = a + b a b a b`: the interior B-run collapses to `τ(b)`, so X has the
//! moments of `a + b (τ(b) a²) b`, whose spectrum comes from `ev_sum_bab`.

use cyclic_ev::cmcalc::{
    collapse_interior_runs, poly_moment, CompositeFamily, Spectrum, TraceClassModel, TracialState,
    Truncation,
};
use cyclic_ev::linred::ev_a_plus_babab;
use cyclic_ev::ncalg::{parse_expression, Letter, Symbols, Word};
use cyclic_ev::C64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 64;
    let model =
        TraceClassModel::spectrum(vec![Spectrum::geometric(0.5, 0.5)], Truncation::Finite(n))?;
    let (tau_b, tau_b2) = (1.0, 2.0);
    let state = TracialState::two_moments(tau_b, tau_b2);
    let syms = Symbols::standard(2, 1);

    let x = parse_expression("a1 + b1*a1*b1*a1*b1", &syms)?;
    let collapsed = collapse_interior_runs(&x, &state)?;
    println!("X           = {x}");
    println!("collapsed X = {collapsed}");

    // a2 stands for τ(b)·a1²
    let mut family = CompositeFamily::new(&model, &state);
    family.register(
        2,
        C64::new(tau_b, 0.0),
        Word::new(vec![Letter::a(1), Letter::a(1)]),
    )?;
    let composite = parse_expression("a1 + b1*a2*b1", &syms)?;

    let pred = ev_a_plus_babab(&model, tau_b, tau_b2, n)?;
    println!(
        "predicted top eigenvalues {:?}",
        &pred.multiset.values()[..5]
    );
    println!(
        "{:>3} {:>16} {:>16} {:>16} {:>16}",
        "m", "ω(X^m)", "collapsed", "composite", "Σλ^m"
    );
    for m in 1..=4 {
        println!(
            "{m:>3} {:>16.10} {:>16.10} {:>16.10} {:>16.10}",
            poly_moment(&x, m, &model, &state)?.re,
            poly_moment(&collapsed, m, &model, &state)?.re,
            poly_moment(&composite, m, &family, &state)?.re,
            pred.moment(m)
        );
    }
    Ok(())
}
