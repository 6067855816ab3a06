//! Models for the tracial weight ω on the trace-class family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncalg::{Family, Word};
use crate::numeric::{self, hermiticity_defect, Realization};
use crate::spectra::{hermitian_spectrum, EVMultiset, Source};
use crate::{CMatrix, C64};

/// Anything that evaluates ω on pure-A words.
pub trait TraceWeight {
    fn omega(&self, word: &Word) -> Result<C64>;
}

/// Eigenvalue sequence of one selfadjoint trace-class generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spectrum {
    Explicit(Vec<f64>),
    /// `scale · ratio^(start_power + k)` for `k = 0, 1, 2, …`
    Geometric {
        scale: f64,
        ratio: f64,
        #[serde(default)]
        start_power: i32,
    },
}

impl Spectrum {
    pub fn geometric(scale: f64, ratio: f64) -> Self {
        Spectrum::Geometric {
            scale,
            ratio,
            start_power: 0,
        }
    }

    /// First `n` eigenvalues; explicit lists are zero-padded.
    pub fn values(&self, n: usize) -> Vec<f64> {
        match self {
            Spectrum::Explicit(v) => (0..n).map(|k| v.get(k).copied().unwrap_or(0.0)).collect(),
            Spectrum::Geometric {
                scale,
                ratio,
                start_power,
            } => {
                let first = scale * ratio.powi(*start_power);
                let mut out = Vec::with_capacity(n);
                let mut x = first;
                for _ in 0..n {
                    out.push(x);
                    x *= ratio;
                }
                out
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Spectrum::Geometric { ratio, scale, .. } => {
                if ratio.is_nan() || ratio.abs() >= 1.0 || !scale.is_finite() {
                    return Err(Error::Invalid(format!(
                        "geometric spectrum needs |ratio| < 1 and finite scale, got ratio {ratio}"
                    )));
                }
            }
            Spectrum::Explicit(v) => {
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Invalid(
                        "explicit spectrum has non-finite entries".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// How many eigenvalues a spectrum model keeps when evaluating ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Finite(usize),
    /// Closed-form geometric sums.
    Analytic,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Finite(64)
    }
}

/// Generators that are simultaneously diagonal, one eigenvalue sequence each.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumModel {
    pub spectra: Vec<Spectrum>,
    pub truncation: Truncation,
}

impl SpectrumModel {
    /// `Σ_j Π_letters λ_j(letter)` over the jointly diagonal realization.
    fn omega_indices(&self, indices: &[usize]) -> f64 {
        let all_geometric = indices
            .iter()
            .all(|&i| matches!(self.spectra[i], Spectrum::Geometric { .. }));
        if self.truncation == Truncation::Analytic && all_geometric {
            let (mut c, mut r) = (1.0, 1.0);
            for &i in indices {
                if let Spectrum::Geometric {
                    scale,
                    ratio,
                    start_power,
                } = self.spectra[i]
                {
                    c *= scale * ratio.powi(start_power);
                    r *= ratio;
                }
            }
            return c / (1.0 - r);
        }
        let mut len = match self.truncation {
            Truncation::Finite(n) => n,
            Truncation::Analytic => usize::MAX,
        };
        for &i in indices {
            if let Spectrum::Explicit(v) = &self.spectra[i] {
                len = len.min(v.len());
            }
        }
        let columns: Vec<Vec<f64>> = indices
            .iter()
            .map(|&i| self.spectra[i].values(len))
            .collect();
        (0..len)
            .map(|j| columns.iter().map(|c| c[j]).product::<f64>())
            .sum()
    }
}

/// Models for the trace-class family.
#[derive(Clone, Debug)]
pub enum TraceClassModel {
    /// Jointly diagonal generators.
    Spectrum(SpectrumModel),
    /// Hermitian matrices with the unnormalized trace.
    MatrixFamily(Vec<CMatrix>),
    /// Limit of independently Haar-rotated spectra: every word mixing two
    /// distinct generators has ω = 0.
    HaarConjugated(SpectrumModel),
}

impl TraceClassModel {
    pub fn spectrum(spectra: Vec<Spectrum>, truncation: Truncation) -> Result<Self> {
        spectra.iter().try_for_each(Spectrum::validate)?;
        Ok(TraceClassModel::Spectrum(SpectrumModel {
            spectra,
            truncation,
        }))
    }

    pub fn haar_conjugated(spectra: Vec<Spectrum>, truncation: Truncation) -> Result<Self> {
        spectra.iter().try_for_each(Spectrum::validate)?;
        Ok(TraceClassModel::HaarConjugated(SpectrumModel {
            spectra,
            truncation,
        }))
    }

    pub fn matrix_family(matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        if matrices.is_empty() || dim == 0 {
            return Err(Error::DimensionMismatch(
                "matrix family needs at least one matrix".into(),
            ));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix a{} has a different shape",
                    i + 1
                )));
            }
            if hermiticity_defect(m) > 1e-9 {
                return Err(Error::NotSelfadjoint(format!(
                    "matrix a{} is not Hermitian",
                    i + 1
                )));
            }
        }
        Ok(TraceClassModel::MatrixFamily(matrices))
    }

    pub fn num_generators(&self) -> usize {
        match self {
            TraceClassModel::Spectrum(s) | TraceClassModel::HaarConjugated(s) => s.spectra.len(),
            TraceClassModel::MatrixFamily(m) => m.len(),
        }
    }

    /// Numeric matrices for every generator, all of dimension
    /// [`realization_dim`](Self::realization_dim). Spectrum models keep `n`
    /// eigenvalues; Haar-conjugated generators live on orthogonal blocks so
    /// that their mixed products vanish.
    pub fn realize(&self, n: usize) -> Vec<CMatrix> {
        match self {
            TraceClassModel::Spectrum(s) => s
                .spectra
                .iter()
                .map(|sp| numeric::real_diagonal(&sp.values(n)))
                .collect(),
            TraceClassModel::MatrixFamily(m) => m.clone(),
            TraceClassModel::HaarConjugated(s) => {
                let k = s.spectra.len();
                s.spectra
                    .iter()
                    .enumerate()
                    .map(|(i, sp)| {
                        let mut diag = vec![0.0; k * n];
                        diag[i * n..(i + 1) * n].copy_from_slice(&sp.values(n));
                        numeric::real_diagonal(&diag)
                    })
                    .collect()
            }
        }
    }

    pub fn realization_dim(&self, n: usize) -> usize {
        match self {
            TraceClassModel::Spectrum(_) => n,
            TraceClassModel::MatrixFamily(m) => m[0].nrows(),
            TraceClassModel::HaarConjugated(s) => n * s.spectra.len(),
        }
    }

    /// Eigenvalue multiset of generator `a{index}` at truncation `n`.
    pub fn generator_spectrum(&self, index: u32, n: usize) -> Result<EVMultiset> {
        let i = index as usize;
        if i == 0 || i > self.num_generators() {
            return Err(Error::NotInDomain(format!(
                "model has no generator a{index}"
            )));
        }
        match self {
            TraceClassModel::Spectrum(s) | TraceClassModel::HaarConjugated(s) => Ok(
                EVMultiset::new(s.spectra[i - 1].values(n), Source::Predicted),
            ),
            TraceClassModel::MatrixFamily(m) => hermitian_spectrum(&m[i - 1]),
        }
    }

    /// Multiplies every generator by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let scale_spectrum = |sp: &Spectrum| match sp {
            Spectrum::Explicit(v) => Spectrum::Explicit(v.iter().map(|x| c * x).collect()),
            Spectrum::Geometric {
                scale,
                ratio,
                start_power,
            } => Spectrum::Geometric {
                scale: c * scale,
                ratio: *ratio,
                start_power: *start_power,
            },
        };
        match self {
            TraceClassModel::Spectrum(s) => TraceClassModel::Spectrum(SpectrumModel {
                spectra: s.spectra.iter().map(scale_spectrum).collect(),
                truncation: s.truncation,
            }),
            TraceClassModel::HaarConjugated(s) => TraceClassModel::HaarConjugated(SpectrumModel {
                spectra: s.spectra.iter().map(scale_spectrum).collect(),
                truncation: s.truncation,
            }),
            TraceClassModel::MatrixFamily(m) => {
                TraceClassModel::MatrixFamily(m.iter().map(|x| x * C64::new(c, 0.0)).collect())
            }
        }
    }
}

/// ω(w) for a nonempty pure-A word.
pub fn omega_a_eval(model: &TraceClassModel, w: &Word) -> Result<C64> {
    if w.is_unit() {
        return Err(Error::NotInDomain(
            "ω(1) is undefined: the identity is not trace class".into(),
        ));
    }
    if w.has_b() {
        return Err(Error::NotInDomain(format!(
            "ω is only evaluated on pure-A words, got `{w}`"
        )));
    }
    let k = model.num_generators();
    let mut indices = Vec::with_capacity(w.len());
    for l in w.letters() {
        debug_assert_eq!(l.family, Family::A);
        let i = l.index as usize;
        if i == 0 || i > k {
            return Err(Error::NotInDomain(format!(
                "model has no generator a{}",
                l.index
            )));
        }
        indices.push(i - 1);
    }
    match model {
        TraceClassModel::Spectrum(s) => Ok(C64::new(s.omega_indices(&indices), 0.0)),
        TraceClassModel::HaarConjugated(s) => {
            if indices.iter().any(|&i| i != indices[0]) {
                Ok(C64::new(0.0, 0.0))
            } else {
                Ok(C64::new(s.omega_indices(&indices), 0.0))
            }
        }
        TraceClassModel::MatrixFamily(m) => {
            let r = Realization {
                a: m,
                b: &[],
                dim: m[0].nrows(),
            };
            Ok(r.word(w)?.trace())
        }
    }
}

impl TraceWeight for TraceClassModel {
    fn omega(&self, word: &Word) -> Result<C64> {
        omega_a_eval(self, word)
    }
}
