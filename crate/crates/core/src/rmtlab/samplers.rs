//! Random matrix samplers with per-trial seeded streams.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linred::ScalarMatrix;
use crate::numeric::real_diagonal;
use crate::{CMatrix, C64};

/// Stream `trial` of the generator seeded by `seed`. Distinct trials never
/// share a stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn complex_normal(rng: &mut impl Rng, variance: f64) -> C64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(s * re, s * im)
}

/// GUE matrix normalized so that `E tr(G²) = 1`.
pub fn sample_gue(n: usize, rng: &mut impl Rng) -> CMatrix {
    let var = 1.0 / n as f64;
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        let d: f64 = rng.sample(StandardNormal);
        g[(i, i)] = C64::new(d * var.sqrt(), 0.0);
        for j in i + 1..n {
            let z = complex_normal(rng, var);
            g[(i, j)] = z;
            g[(j, i)] = z.conj();
        }
    }
    g
}

/// Haar unitary from the QR factorization of a complex Ginibre matrix, with
/// the phases of `R`'s diagonal moved into `Q`.
pub fn sample_haar_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| complex_normal(rng, 1.0));
    let qr = z.qr();
    let r = qr.r();
    let phases = DVector::from_fn(n, |j, _| {
        let d = r[(j, j)];
        if d.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            d / d.norm()
        }
    });
    qr.q() * CMatrix::from_diagonal(&phases)
}

/// `diag(scale · ratio^(start_power + k))`, `k = 0..n`.
pub fn geometric_diag(n: usize, ratio: f64, scale: f64, start_power: i32) -> CMatrix {
    let first = scale * ratio.powi(start_power);
    let values: Vec<f64> = std::iter::successors(Some(first), |x| Some(x * ratio))
        .take(n)
        .collect();
    real_diagonal(&values)
}

/// `β_ij = tr_n(C_i B_j)` with the normalized trace.
pub fn estimate_beta(c: &[CMatrix], b: &[CMatrix]) -> Result<ScalarMatrix> {
    let n = c.first().or(b.first()).map_or(0, |m| m.nrows());
    if c.iter().chain(b).any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::DimensionMismatch(
            "β needs square matrices of one size".into(),
        ));
    }
    Ok(ScalarMatrix::from_fn(c.len(), b.len(), |i, j| {
        // tr(CB) = Σ_kl C_kl B_lk
        let (ci, bj) = (&c[i], &b[j]);
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            for l in 0..n {
                acc += ci[(k, l)] * bj[(l, k)];
            }
        }
        acc / n as f64
    }))
}

/// Largest entry of `|UU* − I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    (u * u.adjoint() - CMatrix::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
