//! Parses a polynomial, expands a power and checks selfadjointness.
//!
//! `cargo run --example parse_expand -- "a1*b1 + b1*a1" 2`

use std::collections::BTreeSet;

use cyclic_ev::ncalg::{parse_expression, Generator, Symbols};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "a1*b1 + b1*a1".into());
    let m: u32 = args.next().map_or(Ok(2), |s| s.parse())?;

    let p = parse_expression(&text, &Symbols::infer(&text))?;
    println!("P        = {p}");
    println!("P*       = {}", p.adjoint());
    let gens: BTreeSet<Generator> = p.generators();
    println!(
        "selfadjoint (generators selfadjoint): {}",
        p.is_selfadjoint(&gens)
    );
    let pm = p.power(m);
    println!("P^{m} has {} terms:", pm.num_terms());
    for (w, c) in pm.terms() {
        let f = w.alternating_form();
        let blocks: Vec<String> = f
            .blocks
            .iter()
            .map(|(a, b)| format!("[{a} | {b}]"))
            .collect();
        println!(
            "  {c:>8} · {w}   leading B [{}] then {}",
            f.leading_b,
            blocks.join(" ")
        );
    }
    Ok(())
}
