//! Chain moments `Tr ⊗ ω((A₁B₁⋯A_kB_k)^m)`: the reduced evaluation replaces
//! each B-matrix by `id ⊗ τ`, the unreduced one expands every word.
//!
//! The chain here is the block model `B A B` with `A = [[a1, a2], [a2, a3]]`
//! and `B = [[b1², b2²], [b2², b3²]]` for free semicircular `b`'s.

use std::time::Instant;

use cyclic_ev::cmcalc::{Spectrum, TraceClassModel, TracialState, Truncation};
use cyclic_ev::linred::{chain_moment, chain_moment_unreduced, reduce_b_matrix, AlgMatrix};
use cyclic_ev::ncalg::Symbols;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let syms = Symbols::standard(3, 3);
    let a = AlgMatrix::parse(&[vec!["a1", "a2"], vec!["a2", "a3"]], &syms)?;
    let b = AlgMatrix::parse(&[vec!["b1*b1", "b2*b2"], vec!["b2*b2", "b3*b3"]], &syms)?;
    let state = TracialState::FreeSemicircular;
    let model = TraceClassModel::haar_conjugated(
        vec![Spectrum::geometric(1.0, 0.5); 3],
        Truncation::Analytic,
    )?;
    let bp = reduce_b_matrix(&b.power(2)?, &state)?;
    let rows: Vec<Vec<f64>> = bp
        .row_iter()
        .map(|r| r.iter().map(|z| z.re).collect())
        .collect();
    println!("id ⊗ τ(B²) = {rows:?}");
    // Tr((BAB)^m) = Tr((A B²)^m)
    let chain = [a, b.power(2)?];
    for m in 1..=3 {
        let t = Instant::now();
        let reduced = chain_moment(&chain, m, &model, &state)?;
        let t_red = t.elapsed();
        let t = Instant::now();
        let full = chain_moment_unreduced(&chain, m, &model, &state)?;
        println!(
            "m={m}: reduced {:.6} ({t_red:.1?})  unreduced {:.6} ({:.1?})",
            reduced.re,
            full.re,
            t.elapsed()
        );
    }
    Ok(())
}
