//! Closed-form spectra of `ab + ba` and `i(ab − ba)` next to the oracle
//! moments they must reproduce.

use cyclic_ev::cmcalc::{poly_moment, Spectrum, TraceClassModel, TracialState, Truncation};
use cyclic_ev::linred::{ev_anticommutator, ev_commutator};
use cyclic_ev::ncalg::{parse_expression, Symbols};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 64;
    let model =
        TraceClassModel::spectrum(vec![Spectrum::geometric(1.0, 0.5)], Truncation::Finite(n))?;
    let a = model.generator_spectrum(1, n)?;
    let (tau_b, tau_b2) = (1.0, 2.0);
    let state = TracialState::two_moments(tau_b, tau_b2);
    let syms = Symbols::standard(1, 1);

    let cases = [
        ("a1*b1 + b1*a1", ev_anticommutator(&a, tau_b, tau_b2)?),
        ("i*(a1*b1 - b1*a1)", ev_commutator(&a, tau_b, tau_b2)?),
    ];
    for (expr, pred) in &cases {
        println!(
            "{expr}: provenance {}",
            serde_json::to_string(&pred.provenance)?
        );
        println!("  top eigenvalues {:?}", &pred.multiset.values()[..6]);
        let p = parse_expression(expr, &syms)?;
        for m in 1..=4 {
            let oracle = poly_moment(&p, m, &model, &state)?.re;
            println!(
                "  m={m}: Σλ^m = {:+.12}  oracle = {oracle:+.12}",
                pred.moment(m)
            );
        }
    }
    Ok(())
}
