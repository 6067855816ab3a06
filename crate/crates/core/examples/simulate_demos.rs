//! Runs the built-in random-matrix scenarios at a reduced size and prints
//! the top of each empirical spectrum next to its prediction.
//!
//! `cargo run --release --example simulate_demos -- 300` uses the full size.

use cyclic_ev::rmtlab::{demo_names, demo_scenario, run_scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(120), |s| s.parse())?;
    for name in demo_names() {
        let mut s = demo_scenario(name).expect("listed demo");
        s.n = n;
        s.trials = 2;
        let report = run_scenario(&s)?;
        println!("{name}: {}", s.expression);
        let first = &report.trials[0];
        if let Some(pred) = report.predicted_for(first) {
            for (i, (e, p)) in first
                .eigenvalues
                .iter()
                .zip(pred.values())
                .take(6)
                .enumerate()
            {
                println!("  λ{:<2} empirical {e:+.5}  predicted {p:+.5}", i + 1);
            }
            let (mean, max) = report.top_distance(10)?;
            println!("  top-10 max_rel: mean {mean:.4}, max {max:.4}");
        }
        if let Some(limit) = &report.limit_moments {
            for (k, (mean, lim)) in report.summary.mean_moments.iter().zip(limit).enumerate() {
                println!("  Tr(X^{}) mean {mean:.4}  limit {lim:.4}", k + 1);
            }
        }
    }
    Ok(())
}
