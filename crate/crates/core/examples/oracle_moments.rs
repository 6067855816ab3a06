//! Moments from the brute-force oracle for a few polynomials, with the
//! B-family given by two moments, a moment table, or a matrix model.

use cyclic_ev::cmcalc::{
    poly_moment, MomentTable, Spectrum, TraceClassModel, TracialState, Truncation,
};
use cyclic_ev::ncalg::{parse_expression, Symbols, Word};
use cyclic_ev::{CMatrix, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a = diag(1, 1/2, 1/4, …) without truncation
    let a = TraceClassModel::spectrum(vec![Spectrum::geometric(1.0, 0.5)], Truncation::Analytic)?;
    let syms = Symbols::standard(1, 1);

    let two = TracialState::two_moments(1.0, 2.0);
    let anti = parse_expression("a1*b1 + b1*a1", &syms)?;
    for m in 1..=4 {
        println!(
            "ω((ab+ba)^{m}) = {:.6}",
            poly_moment(&anti, m, &a, &two)?.re
        );
    }

    let word = |t: &str| -> Result<Word, Box<dyn std::error::Error>> {
        let p = parse_expression(t, &syms)?;
        let w = p.terms().next().expect("one term").0.clone();
        Ok(w)
    };
    let (b1, b11, b111) = (word("b1")?, word("b1*b1")?, word("b1*b1*b1")?);
    let table = MomentTable::new(3, None)
        .with(&b1, 0.0)?
        .with(&b11, 1.0)?
        .with(&b111, 0.0)?;
    let p = parse_expression("b1*a1*b1", &syms)?;
    let state = TracialState::MomentTable(table);
    println!(
        "ω(bab) with a centred unit-variance b = {}",
        poly_moment(&p, 1, &a, &state)?.re
    );

    // b realized as the 2x2 matrix [[1, 1], [1, 0]] under the normalized trace
    let m = CMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 0.0].map(|x| C64::new(x, 0.0)));
    let state = TracialState::matrices(vec![m])?;
    let p = parse_expression("a1*b1*a1*b1", &syms)?;
    println!(
        "ω(abab) with b a 2x2 matrix = {}",
        poly_moment(&p, 1, &a, &state)?.re
    );
    Ok(())
}
