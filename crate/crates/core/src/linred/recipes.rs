//! Closed-form eigenvalue predictions for the standard polynomial families.

use serde_json::json;

use super::matrix::ScalarMatrix;
use super::prediction::{Prediction, Provenance};
use crate::cmcalc::TraceClassModel;
use crate::error::{Error, Result};
use crate::ncalg::{Letter, NCPolynomial, Word};
use crate::numeric::{hermiticity_defect, Realization};
use crate::spectra::{general_eigenvalues, hermitian_spectrum, EVMultiset};
use crate::{CMatrix, C64};

fn real_rows(s: &ScalarMatrix) -> Vec<Vec<f64>> {
    (0..s.nrows())
        .map(|i| (0..s.ncols()).map(|j| s[(i, j)].re).collect())
        .collect()
}

/// Spectral square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero.
pub fn psd_sqrt(gram: &ScalarMatrix) -> Result<ScalarMatrix> {
    if gram.nrows() != gram.ncols() {
        return Err(Error::DimensionMismatch(
            "Gram matrix must be square".into(),
        ));
    }
    if hermiticity_defect(gram) > 1e-10 {
        return Err(Error::NotSelfadjoint("Gram matrix is not Hermitian".into()));
    }
    let eig = nalgebra::SymmetricEigen::new(crate::numeric::hermitian_part(gram));
    if let Some(worst) = eig.eigenvalues.iter().copied().find(|&v| v < -1e-10) {
        return Err(Error::NotPositive(format!(
            "Gram matrix has eigenvalue {worst:e}"
        )));
    }
    let roots = eig.eigenvalues.map(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    Ok(v * CMatrix::from_diagonal(&roots) * v.adjoint())
}

fn realize_all(model: &TraceClassModel, polys: &[NCPolynomial], n: usize) -> Result<Vec<CMatrix>> {
    let mats = model.realize(n);
    let r = Realization {
        a: &mats,
        b: &[],
        dim: model.realization_dim(n),
    };
    polys
        .iter()
        .map(|p| {
            if !p.is_pure_a() {
                return Err(Error::NotInDomain(format!(
                    "`{p}` is not a pure-A polynomial"
                )));
            }
            r.polynomial(p)
        })
        .collect()
}

/// Spectrum of `√B diag(d₁,…,d_k) √B` with the diagonal entries realized at
/// truncation `n`.
pub fn ev_sum_bab(
    model: &TraceClassModel,
    diagonal: &[NCPolynomial],
    gram: &ScalarMatrix,
    n: usize,
) -> Result<Prediction> {
    let k = diagonal.len();
    if gram.nrows() != k || gram.ncols() != k {
        return Err(Error::DimensionMismatch(format!(
            "Gram matrix is {}x{} but there are {k} diagonal entries",
            gram.nrows(),
            gram.ncols()
        )));
    }
    let s = psd_sqrt(gram)?;
    let blocks = realize_all(model, diagonal, n)?;
    let d = model.realization_dim(n);
    let mut m = CMatrix::zeros(k * d, k * d);
    for i in 0..k {
        for j in 0..k {
            let mut block = CMatrix::zeros(d, d);
            for (l, a) in blocks.iter().enumerate() {
                let c = s[(i, l)] * s[(l, j)];
                if c.norm() > 0.0 {
                    block += a * c;
                }
            }
            m.view_mut((i * d, j * d), (d, d)).copy_from(&block);
        }
    }
    let spectrum = hermitian_spectrum(&m)?;
    let parameters = json!({
        "diagonal": diagonal.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "truncation": n,
    });
    Ok(
        Prediction::new("sum_bab", parameters, spectrum.values().to_vec()).with_provenance(
            Provenance {
                gram: Some(real_rows(gram)),
                ..Default::default()
            },
        ),
    )
}

/// Spectrum of `Σ τ(bᵢ) aᵢ aᵢ*`.
pub fn ev_sum_aba(
    model: &TraceClassModel,
    a: &[NCPolynomial],
    taus: &[f64],
    n: usize,
) -> Result<Prediction> {
    if a.len() != taus.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} A-entries but {} τ-values",
            a.len(),
            taus.len()
        )));
    }
    let mats = realize_all(model, a, n)?;
    let d = model.realization_dim(n);
    let mut sum = CMatrix::zeros(d, d);
    for (m, &t) in mats.iter().zip(taus) {
        sum += (m * m.adjoint()) * C64::new(t, 0.0);
    }
    let spectrum = hermitian_spectrum(&sum)?;
    let parameters = json!({
        "a": a.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "taus": taus,
        "truncation": n,
    });
    Ok(Prediction::new(
        "sum_aba",
        parameters,
        spectrum.values().to_vec(),
    ))
}

/// Spectrum of `√B diag(τ(c₁)a₁a₁*,…,τ(c_k)a_ka_k*) √B`.
pub fn ev_conjugated_sum(
    model: &TraceClassModel,
    a: &[NCPolynomial],
    c_taus: &[f64],
    gram: &ScalarMatrix,
    n: usize,
) -> Result<Prediction> {
    if a.len() != c_taus.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} A-entries but {} τ(c)-values",
            a.len(),
            c_taus.len()
        )));
    }
    let diagonal: Vec<NCPolynomial> = a
        .iter()
        .zip(c_taus)
        .map(|(p, &t)| p.multiply(&p.adjoint()).scale(C64::new(t, 0.0)))
        .collect();
    let mut pred = ev_sum_bab(model, &diagonal, gram, n)?;
    pred.recipe = "conjugated_sum".into();
    pred.parameters = json!({
        "a": a.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "c_taus": c_taus,
        "truncation": n,
    });
    Ok(pred)
}

/// Prediction for `a + b a b a b`: the substitution rewrites it as
/// `a + b (τ(b) a²) b`, a two-term `Σ bᵢ dᵢ bᵢ` with `b₁ = 1`, `b₂ = b`.
pub fn ev_a_plus_babab(
    model: &TraceClassModel,
    tau_b: f64,
    tau_b2: f64,
    n: usize,
) -> Result<Prediction> {
    let a = NCPolynomial::letter(Letter::a(1));
    let a2 =
        NCPolynomial::word(Word::new(vec![Letter::a(1), Letter::a(1)])).scale(C64::new(tau_b, 0.0));
    let gram = CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(1.0, 0.0),
            C64::new(tau_b, 0.0),
            C64::new(tau_b, 0.0),
            C64::new(tau_b2, 0.0),
        ],
    );
    let mut pred = ev_sum_bab(model, &[a, a2], &gram, n)?;
    pred.recipe = "a_plus_babab".into();
    pred.parameters = json!({ "tau_b": tau_b, "tau_b2": tau_b2, "truncation": n });
    Ok(pred)
}

/// `(p·EV(a)) ⊔ (q·EV(a))` with `p, q = τ(b) ± √τ(b²)`.
pub fn ev_anticommutator(a: &EVMultiset, tau_b: f64, tau_b2: f64) -> Result<Prediction> {
    if tau_b2 < 0.0 {
        return Err(Error::NotPositive(format!("τ(b²) = {tau_b2} is negative")));
    }
    let root = tau_b2.sqrt();
    let (p, q) = (tau_b + root, tau_b - root);
    let values = a.scale(p).disjoint_union(&a.scale(q));
    Ok(Prediction::new(
        "anticommutator",
        json!({ "tau_b": tau_b, "tau_b2": tau_b2 }),
        values.values().to_vec(),
    )
    .with_provenance(Provenance {
        p: Some(p),
        q: Some(q),
        ..Default::default()
    }))
}

/// `(r·EV(a)) ⊔ (−r·EV(a))` with `r = √(τ(b²) − τ(b)²)`.
pub fn ev_commutator(a: &EVMultiset, tau_b: f64, tau_b2: f64) -> Result<Prediction> {
    let var = tau_b2 - tau_b * tau_b;
    if var < -1e-12 {
        return Err(Error::NotPositive(format!(
            "τ(b²) − τ(b)² = {var:e} is negative"
        )));
    }
    let r = var.max(0.0).sqrt();
    let values = a.scale(r).disjoint_union(&a.scale(-r));
    Ok(Prediction::new(
        "commutator",
        json!({ "tau_b": tau_b, "tau_b2": tau_b2 }),
        values.values().to_vec(),
    )
    .with_provenance(Provenance {
        r: Some(r),
        ..Default::default()
    }))
}

/// `⊔ λᵢ·EV(a)` over the eigenvalues of `B′ = (τ(cᵢbⱼ))`.
pub fn ev_sum_bac(a: &EVMultiset, bprime: &ScalarMatrix) -> Result<Prediction> {
    let eig = if bprime.nrows() == 2 && bprime.ncols() == 2 {
        eigenvalues_2x2(bprime)
    } else {
        general_eigenvalues(bprime)?
    };
    if let Some(z) = eig.iter().find(|z| z.im.abs() > 1e-9) {
        return Err(Error::ComplexEigenvalues(format!("B′ has eigenvalue {z}")));
    }
    let mut lambda: Vec<f64> = eig.iter().map(|z| z.re).collect();
    lambda.sort_by(|x, y| y.total_cmp(x));
    let mut values = Vec::with_capacity(a.len() * lambda.len());
    for &l in &lambda {
        values.extend(a.values().iter().map(|v| l * v));
    }
    Ok(
        Prediction::new("sum_bac", json!({ "bprime": real_rows(bprime) }), values).with_provenance(
            Provenance {
                lambda: Some(lambda),
                gram: Some(real_rows(bprime)),
                ..Default::default()
            },
        ),
    )
}

/// Roots of the characteristic polynomial, exact for small integer entries.
fn eigenvalues_2x2(m: &ScalarMatrix) -> Vec<C64> {
    let half_trace = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let half_gap = (m[(0, 0)] - m[(1, 1)]) * 0.5;
    let root = (half_gap * half_gap + m[(0, 1)] * m[(1, 0)]).sqrt();
    vec![half_trace + root, half_trace - root]
}
