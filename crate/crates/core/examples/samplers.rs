//! GUE and Haar samplers with their basic statistics.

use cyclic_ev::rmtlab::{sample_gue, sample_haar_unitary, trial_rng, unitarity_defect};
use cyclic_ev::spectra::hermitian_spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 200;
    let mut rng = trial_rng(42, 0);
    let g = sample_gue(n, &mut rng);
    let g2 = &g * &g;
    let tr2 = g2.trace().re / n as f64;
    let tr4 = (&g2 * &g2).trace().re / n as f64;
    println!("GUE n={n}: tr(G²) = {tr2:.4} (→ 1), tr(G⁴) = {tr4:.4} (→ 2)");
    let ev = hermitian_spectrum(&g)?;
    println!("  spectral edge {:.4} (→ 2)", ev.values()[0].abs());

    let u = sample_haar_unitary(n, &mut rng);
    println!("Haar n={n}: max |UU* − I| = {:.2e}", unitarity_defect(&u));
    let phases: Vec<f64> = u.diagonal().iter().take(4).map(|z| z.arg()).collect();
    println!("  first diagonal phases {phases:.3?}");

    let mut again = trial_rng(42, 0);
    println!(
        "same seed and trial reproduce: {}",
        sample_gue(n, &mut again) == g
    );
    let mut other = trial_rng(42, 1);
    println!("trial 1 differs: {}", sample_gue(n, &mut other) != g);
    Ok(())
}
