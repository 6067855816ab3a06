//! Eigenvalue multisets, the dense eigensolver wrappers and spectrum
//! comparison metrics.

use std::cmp::Ordering;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::hermiticity_defect;
use crate::{CMatrix, C64};

/// Where a multiset came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Empirical,
    Predicted,
    OracleDerived,
}

/// Canonical order: descending `|λ|`, ties by descending signed value.
pub fn canonical_cmp(x: &f64, y: &f64) -> Ordering {
    y.abs().total_cmp(&x.abs()).then_with(|| y.total_cmp(x))
}

/// A finite multiset of real eigenvalues kept in canonical order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EVMultiset {
    values: Vec<f64>,
    pub source: Source,
}

impl EVMultiset {
    pub fn new(mut values: Vec<f64>, source: Source) -> Self {
        values.sort_by(canonical_cmp);
        EVMultiset { values, source }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn scale(&self, c: f64) -> Self {
        EVMultiset::new(self.values.iter().map(|v| c * v).collect(), self.source)
    }

    pub fn disjoint_union(&self, other: &EVMultiset) -> Self {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        EVMultiset::new(values, self.source)
    }

    /// First `m` entries in canonical order.
    pub fn truncate(&self, m: usize) -> Self {
        EVMultiset {
            values: self.values[..m.min(self.len())].to_vec(),
            source: self.source,
        }
    }

    /// `Σ λ^k`.
    pub fn moment(&self, k: u32) -> f64 {
        self.values.iter().map(|v| v.powi(k as i32)).sum()
    }

    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        for v in &self.values {
            writeln!(out, "{v}")?;
        }
        Ok(())
    }

    pub fn read_csv(input: impl BufRead, source: Source) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v = line
                .parse::<f64>()
                .map_err(|e| Error::Invalid(format!("eigenvalue csv line {}: {e}", i + 1)))?;
            values.push(v);
        }
        Ok(EVMultiset::new(values, source))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.values.clone())
    }
}

/// `Σ λ^k` as a free function, matching the multiset moment of the theory.
pub fn multiset_moment(s: &EVMultiset, k: u32) -> f64 {
    s.moment(k)
}

/// Eigenvalues of a Hermitian matrix.
pub fn hermitian_spectrum(m: &CMatrix) -> Result<EVMultiset> {
    check_square(m)?;
    let defect = hermiticity_defect(m);
    if defect > 1e-9 {
        return Err(Error::NotSelfadjoint(format!(
            "matrix deviates from its adjoint by {defect:e}"
        )));
    }
    let h = crate::numeric::hermitian_part(m);
    let eig = nalgebra::SymmetricEigen::new(h);
    Ok(EVMultiset::new(
        eig.eigenvalues.iter().copied().collect(),
        Source::Empirical,
    ))
}

/// Eigenvalues of a general square matrix whose spectrum is known to be real.
///
/// Imaginary parts up to `rel_tol · spectral radius` are discarded; larger
/// ones raise `ComplexEigenvalues`.
pub fn real_spectrum(m: &CMatrix, rel_tol: f64) -> Result<EVMultiset> {
    check_square(m)?;
    if m.nrows() == 0 {
        return Ok(EVMultiset::new(Vec::new(), Source::Empirical));
    }
    let eig = general_eigenvalues(m)?;
    let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let worst = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if worst > rel_tol * radius.max(f64::MIN_POSITIVE) && worst > 1e-14 {
        return Err(Error::ComplexEigenvalues(format!(
            "imaginary part {worst:e} exceeds {rel_tol:e} of spectral radius {radius:e}"
        )));
    }
    Ok(EVMultiset::new(
        eig.iter().map(|z| z.re).collect(),
        Source::Empirical,
    ))
}

/// All eigenvalues of a general complex matrix from its Schur form.
pub fn general_eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    check_square(m)?;
    let schur = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Invalid("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchDistance {
    pub max_abs: f64,
    pub max_rel: f64,
}

/// Distance between the top `m` entries of `observed` and `reference`.
///
/// Both selections are taken in canonical order, then paired by signed
/// value so that near-ties in `|λ|` with opposite signs do not cross-match.
/// The relative error is measured against the reference entry.
pub fn match_distance(
    observed: &EVMultiset,
    reference: &EVMultiset,
    m: usize,
) -> Result<MatchDistance> {
    for s in [observed, reference] {
        if s.len() < m {
            return Err(Error::InsufficientEntries {
                needed: m,
                available: s.len(),
            });
        }
    }
    let pick = |s: &EVMultiset| {
        let mut v = s.values[..m].to_vec();
        v.sort_by(|x, y| y.total_cmp(x));
        v
    };
    let (s, t) = (pick(observed), pick(reference));
    let mut d = MatchDistance::default();
    for (x, y) in s.iter().zip(&t) {
        let abs = (x - y).abs();
        d.max_abs = d.max_abs.max(abs);
        d.max_rel = d.max_rel.max(abs / y.abs().max(1e-12));
    }
    Ok(d)
}
