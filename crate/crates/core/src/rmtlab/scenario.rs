//! Scenario files and the Monte Carlo runner.
//!
//! Matrices in the expression are the scenario's *generators*; predictions
//! refer to the underlying *components* (`a<k>` is A-component `k`, `b<k>`
//! is B-component `k`). Without an explicit generator list the two coincide.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::samplers::{
    estimate_beta, geometric_diag, sample_gue, sample_haar_unitary, trial_rng, unitarity_defect,
};
use crate::cmcalc::{MomentTableDoc, Spectrum, TraceClassModel, TracialState, Truncation};
use crate::error::{Error, Result};
use crate::linred::{
    chain_moment, ev_anticommutator, ev_chain, ev_commutator, ev_conjugated_sum, ev_sum_aba,
    ev_sum_bab, ev_sum_bac, AlgMatrix, Prediction, ScalarMatrix,
};
use crate::ncalg::{parse_expression, Generator, NCPolynomial, Symbols};
use crate::numeric::{
    hermitian_part, hermiticity_defect, read_matrix_csv, real_diagonal, trace_power, Realization,
};
use crate::spectra::{hermitian_spectrum, match_distance, EVMultiset, MatchDistance, Source};
use crate::{CMatrix, C64};

fn default_trials() -> usize {
    5
}

fn default_top() -> usize {
    10
}

fn default_truncation() -> usize {
    64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AComponent {
    Geometric {
        scale: f64,
        ratio: f64,
        #[serde(default)]
        start_power: i32,
        /// Conjugate by a fresh Haar unitary.
        #[serde(default)]
        rotate: bool,
    },
    Explicit {
        values: Vec<f64>,
        #[serde(default)]
        rotate: bool,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BComponent {
    Gue,
    GueSquared,
    File {
        path: PathBuf,
    },
    /// Reuses the sample of an earlier component (1-based).
    SameAs {
        component: usize,
    },
}

/// A generator is one component or a block matrix of components
/// (1-based, `0` for a zero block).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Component { component: usize },
    Block { block: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec<T> {
    pub components: Vec<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BStateSpec {
    FreeSemicircular,
    MomentTable(MomentTableDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaEstimate {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case", deny_unknown_fields)]
pub enum PredictionSpec {
    Anticommutator {
        tau_b: f64,
        tau_b2: f64,
        #[serde(default = "one")]
        a: usize,
    },
    Commutator {
        tau_b: f64,
        tau_b2: f64,
        #[serde(default = "one")]
        a: usize,
    },
    SumBab {
        diagonal: Vec<String>,
        gram: Vec<Vec<f64>>,
    },
    SumAba {
        a: Vec<String>,
        taus: Vec<f64>,
    },
    /// Either a fixed `bprime` or β estimated per trial from the sampled
    /// B-components.
    SumBac {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bprime: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        estimate: Option<BetaEstimate>,
        #[serde(default = "one")]
        a: usize,
    },
    ConjugatedSum {
        a: Vec<String>,
        c_taus: Vec<f64>,
        gram: Vec<Vec<f64>>,
    },
    Chain {
        b0: Vec<Vec<String>>,
        chain: Vec<Vec<Vec<String>>>,
        b_state: BStateSpec,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub n: usize,
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub a_spec: FamilySpec<AComponent>,
    pub b_spec: FamilySpec<BComponent>,
    #[serde(default)]
    pub haar_conjugate_b: bool,
    pub expression: String,
    pub prediction: PredictionSpec,
    #[serde(default = "default_top")]
    pub compare_top: usize,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialDiagnostics {
    pub hermiticity_defect: f64,
    pub max_unitarity_defect: f64,
    /// `tr(G²)` of every fresh GUE sample.
    pub gue_second_moments: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub eigenvalues: Vec<f64>,
    /// `Tr(X^k)` for `k = 1, 2, 3`.
    pub moments: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<MatchDistance>,
    /// Present when the prediction depends on the trial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<f64>>>,
    pub diagnostics: TrialDiagnostics,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean_max_abs: Option<f64>,
    pub mean_max_rel: Option<f64>,
    pub max_max_rel: Option<f64>,
    pub mean_moments: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Scenario,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_moments: Option<Vec<f64>>,
    /// Exact limit moments for chain predictions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_moments: Option<Vec<f64>>,
    pub trials: Vec<TrialReport>,
    pub summary: Summary,
}

impl Report {
    /// Predicted eigenvalues used for `trial`.
    pub fn predicted_for(&self, trial: &TrialReport) -> Option<EVMultiset> {
        trial
            .predicted_eigenvalues
            .clone()
            .or_else(|| {
                self.prediction
                    .as_ref()
                    .map(|p| p.multiset.values().to_vec())
            })
            .map(|v| EVMultiset::new(v, Source::Predicted))
    }

    /// Mean and maximum over trials of the top-`m` relative distance.
    pub fn top_distance(&self, m: usize) -> Result<(f64, f64)> {
        let mut rels = Vec::with_capacity(self.trials.len());
        for t in &self.trials {
            let predicted = self.predicted_for(t).ok_or_else(|| {
                Error::Invalid("report has no prediction to compare against".into())
            })?;
            let empirical = EVMultiset::new(t.eigenvalues.clone(), Source::Empirical);
            rels.push(match_distance(&empirical, &predicted, m)?.max_rel);
        }
        if rels.is_empty() {
            return Err(Error::Invalid("report has no trials".into()));
        }
        let mean = rels.iter().sum::<f64>() / rels.len() as f64;
        Ok((mean, rels.iter().copied().fold(0.0, f64::max)))
    }
}

impl Scenario {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    /// Reads a scenario; relative `file` paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut s = Self::from_json_str(&std::fs::read_to_string(path)?)?;
        if let Some(dir) = path.parent() {
            s.resolve_paths(dir);
        }
        Ok(s)
    }

    fn resolve_paths(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        for c in &mut self.a_spec.components {
            if let AComponent::File { path } = c {
                fix(path);
            }
        }
        for c in &mut self.b_spec.components {
            if let BComponent::File { path } = c {
                fix(path);
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Invalid(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.trials < 1 {
            return Err(Error::Invalid("trials must be at least 1".into()));
        }
        if self.truncation < 1 {
            return Err(Error::Invalid("truncation must be at least 1".into()));
        }
        parse_expression(&self.expression, &Symbols::infer(&self.expression))?;
        for (i, c) in self.a_spec.components.iter().enumerate() {
            if let AComponent::Geometric { ratio, scale, .. } = c {
                if ratio.is_nan() || ratio.abs() >= 1.0 || !scale.is_finite() {
                    return Err(Error::Invalid(format!(
                        "A-component {} needs |ratio| < 1",
                        i + 1
                    )));
                }
            }
        }
        for (i, c) in self.b_spec.components.iter().enumerate() {
            if let BComponent::SameAs { component } = c {
                if *component == 0 || *component > i {
                    return Err(Error::Invalid(format!(
                        "B-component {} may only copy an earlier component",
                        i + 1
                    )));
                }
            }
        }
        check_generators(&self.a_spec.generators, self.a_spec.components.len(), "A")?;
        check_generators(&self.b_spec.generators, self.b_spec.components.len(), "B")?;
        if let PredictionSpec::SumBac {
            bprime, estimate, ..
        } = &self.prediction
        {
            if bprime.is_some() == estimate.is_some() {
                return Err(Error::Invalid(
                    "sum_bac needs exactly one of `bprime` or `estimate`".into(),
                ));
            }
            if let Some(e) = estimate {
                if e.b.len() != e.c.len() {
                    return Err(Error::DimensionMismatch(
                        "β estimate needs equally many b's and c's".into(),
                    ));
                }
                let k = self.b_spec.components.len();
                if e.b.iter().chain(&e.c).any(|&i| i == 0 || i > k) {
                    return Err(Error::Invalid(
                        "β estimate refers to a missing B-component".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Limit model of the A-components used by the predictions.
    pub fn prediction_model(&self, truncation: Truncation) -> Result<TraceClassModel> {
        let comps = &self.a_spec.components;
        if comps.is_empty() {
            return Err(Error::Invalid("scenario has no A-components".into()));
        }
        if comps.iter().any(|c| matches!(c, AComponent::File { .. })) {
            let mats = comps
                .iter()
                .map(|c| a_component_matrix(c, self.n))
                .collect::<Result<Vec<_>>>()?;
            return TraceClassModel::matrix_family(mats);
        }
        let mut spectra = Vec::new();
        let mut rotated = 0;
        for c in comps {
            match c {
                AComponent::Geometric {
                    scale,
                    ratio,
                    start_power,
                    rotate,
                } => {
                    spectra.push(Spectrum::Geometric {
                        scale: *scale,
                        ratio: *ratio,
                        start_power: *start_power,
                    });
                    rotated += usize::from(*rotate);
                }
                AComponent::Explicit { values, rotate } => {
                    spectra.push(Spectrum::Explicit(values.clone()));
                    rotated += usize::from(*rotate);
                }
                AComponent::File { .. } => unreachable!(),
            }
        }
        if spectra.len() == 1 || rotated == 0 {
            TraceClassModel::spectrum(spectra, truncation)
        } else if rotated + 1 >= spectra.len() {
            TraceClassModel::haar_conjugated(spectra, truncation)
        } else {
            Err(Error::Invalid(
                "A-components mix several unrotated and rotated spectra; no limit model applies"
                    .into(),
            ))
        }
    }
}

fn check_generators(gens: &Option<Vec<GeneratorSpec>>, count: usize, family: &str) -> Result<()> {
    for g in gens.iter().flatten() {
        let refs: Vec<usize> = match g {
            GeneratorSpec::Component { component } => {
                if *component == 0 {
                    return Err(Error::Invalid(format!(
                        "{family}-generator refers to component 0"
                    )));
                }
                vec![*component]
            }
            GeneratorSpec::Block { block } => {
                if block.is_empty() || block.iter().any(|r| r.len() != block.len()) {
                    return Err(Error::DimensionMismatch(format!(
                        "{family}-generator block is not square"
                    )));
                }
                block.iter().flatten().copied().collect()
            }
        };
        if let Some(bad) = refs.into_iter().find(|&r| r > count) {
            return Err(Error::Invalid(format!(
                "{family}-generator refers to missing component {bad}"
            )));
        }
    }
    Ok(())
}

fn a_component_matrix(c: &AComponent, n: usize) -> Result<CMatrix> {
    match c {
        AComponent::Geometric {
            scale,
            ratio,
            start_power,
            ..
        } => Ok(geometric_diag(n, *ratio, *scale, *start_power)),
        AComponent::Explicit { values, .. } => Ok(real_diagonal(
            &(0..n)
                .map(|k| values.get(k).copied().unwrap_or(0.0))
                .collect::<Vec<_>>(),
        )),
        AComponent::File { path } => load_square(path, n),
    }
}

fn load_square(path: &Path, n: usize) -> Result<CMatrix> {
    let file = std::fs::File::open(path)?;
    let m = read_matrix_csv(std::io::BufReader::new(file))?;
    if m.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} holds a {}x{} matrix, scenario n is {n}",
            path.display(),
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m)
}

fn assemble(gens: &Option<Vec<GeneratorSpec>>, comps: &[CMatrix], n: usize) -> Vec<CMatrix> {
    let Some(gens) = gens else {
        return comps.to_vec();
    };
    gens.iter()
        .map(|g| match g {
            GeneratorSpec::Component { component } => comps[component - 1].clone(),
            GeneratorSpec::Block { block } => {
                let k = block.len();
                let mut out = CMatrix::zeros(k * n, k * n);
                for (i, row) in block.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate() {
                        if c > 0 {
                            out.view_mut((i * n, j * n), (n, n))
                                .copy_from(&comps[c - 1]);
                        }
                    }
                }
                out
            }
        })
        .collect()
}

/// Matrices drawn for one trial.
pub struct Sample {
    pub a_components: Vec<CMatrix>,
    pub b_components: Vec<CMatrix>,
    pub a: Vec<CMatrix>,
    pub b: Vec<CMatrix>,
    pub diagnostics: TrialDiagnostics,
}

/// Draws every matrix of trial `t`: A-components first, then B-components,
/// then the shared Haar unitary.
pub fn sample_trial(s: &Scenario, t: usize) -> Result<Sample> {
    let mut rng = trial_rng(s.seed, t as u64);
    let n = s.n;
    let mut diag = TrialDiagnostics::default();
    let haar = |rng: &mut rand_chacha::ChaCha20Rng, diag: &mut TrialDiagnostics| {
        let u = sample_haar_unitary(n, rng);
        diag.max_unitarity_defect = diag.max_unitarity_defect.max(unitarity_defect(&u));
        u
    };
    let mut a_components = Vec::with_capacity(s.a_spec.components.len());
    for c in &s.a_spec.components {
        let mut m = a_component_matrix(c, n)?;
        let rotate = matches!(
            c,
            AComponent::Geometric { rotate: true, .. } | AComponent::Explicit { rotate: true, .. }
        );
        if rotate {
            let u = haar(&mut rng, &mut diag);
            m = &u * m * u.adjoint();
        }
        a_components.push(m);
    }
    let mut b_components: Vec<CMatrix> = Vec::with_capacity(s.b_spec.components.len());
    for c in &s.b_spec.components {
        let m = match c {
            BComponent::Gue | BComponent::GueSquared => {
                let g = sample_gue(n, &mut rng);
                diag.gue_second_moments
                    .push(trace_power(&g, 2).re / n as f64);
                if matches!(c, BComponent::GueSquared) {
                    &g * &g
                } else {
                    g
                }
            }
            BComponent::File { path } => load_square(path, n)?,
            BComponent::SameAs { component } => b_components[component - 1].clone(),
        };
        b_components.push(m);
    }
    if s.haar_conjugate_b {
        let u = haar(&mut rng, &mut diag);
        for m in &mut b_components {
            *m = &u * &*m * u.adjoint();
        }
    }
    let a = assemble(&s.a_spec.generators, &a_components, n);
    let b = assemble(&s.b_spec.generators, &b_components, n);
    Ok(Sample {
        a_components,
        b_components,
        a,
        b,
        diagnostics: diag,
    })
}

fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<ScalarMatrix> {
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k) {
        return Err(Error::DimensionMismatch(
            "scalar matrix rows must form a square".into(),
        ));
    }
    Ok(ScalarMatrix::from_fn(k, k, |i, j| {
        C64::new(rows[i][j], 0.0)
    }))
}

fn parse_all(texts: &[String], symbols: &Symbols) -> Result<Vec<NCPolynomial>> {
    Ok(texts
        .iter()
        .map(|t| parse_expression(t, symbols))
        .collect::<std::result::Result<_, _>>()?)
}

fn component_symbols(s: &Scenario) -> Symbols {
    Symbols::standard(
        s.a_spec.components.len() as u32,
        s.b_spec.components.len() as u32,
    )
}

fn chain_matrices(
    s: &Scenario,
    b0: &[Vec<String>],
    chain: &[Vec<Vec<String>>],
) -> Result<(AlgMatrix, Vec<AlgMatrix>)> {
    let syms = component_symbols(s);
    let b0 = AlgMatrix::parse(b0, &syms)?;
    let chain = chain
        .iter()
        .map(|m| AlgMatrix::parse(m, &syms))
        .collect::<Result<Vec<_>>>()?;
    Ok((b0, chain))
}

fn b_state(spec: &BStateSpec) -> Result<TracialState> {
    match spec {
        BStateSpec::FreeSemicircular => Ok(TracialState::FreeSemicircular),
        BStateSpec::MomentTable(doc) => Ok(TracialState::MomentTable(doc.build()?)),
    }
}

/// The scenario's prediction. `sample` is required for per-trial recipes and
/// ignored otherwise.
pub fn predict(
    s: &Scenario,
    sample: Option<&Sample>,
) -> Result<Option<(Prediction, Option<ScalarMatrix>)>> {
    let n = s.truncation;
    let model = || s.prediction_model(Truncation::Finite(n));
    let syms = component_symbols(s);
    let pred = match &s.prediction {
        PredictionSpec::None => return Ok(None),
        PredictionSpec::Anticommutator { tau_b, tau_b2, a } => {
            ev_anticommutator(&model()?.generator_spectrum(*a as u32, n)?, *tau_b, *tau_b2)?
        }
        PredictionSpec::Commutator { tau_b, tau_b2, a } => {
            ev_commutator(&model()?.generator_spectrum(*a as u32, n)?, *tau_b, *tau_b2)?
        }
        PredictionSpec::SumBab { diagonal, gram } => ev_sum_bab(
            &model()?,
            &parse_all(diagonal, &syms)?,
            &matrix_from_rows(gram)?,
            n,
        )?,
        PredictionSpec::SumAba { a, taus } => {
            ev_sum_aba(&model()?, &parse_all(a, &syms)?, taus, n)?
        }
        PredictionSpec::ConjugatedSum { a, c_taus, gram } => ev_conjugated_sum(
            &model()?,
            &parse_all(a, &syms)?,
            c_taus,
            &matrix_from_rows(gram)?,
            n,
        )?,
        PredictionSpec::SumBac {
            bprime,
            estimate,
            a,
        } => {
            let spectrum = model()?.generator_spectrum(*a as u32, n)?;
            let bprime = match (bprime, estimate) {
                (Some(rows), _) => matrix_from_rows(rows)?,
                (None, Some(e)) => {
                    let Some(sample) = sample else {
                        return Ok(None);
                    };
                    let pick = |idx: &[usize]| {
                        idx.iter()
                            .map(|&i| sample.b_components[i - 1].clone())
                            .collect::<Vec<_>>()
                    };
                    estimate_beta(&pick(&e.c), &pick(&e.b))?
                }
                (None, None) => {
                    return Err(Error::Invalid(
                        "sum_bac needs `bprime` or `estimate`".into(),
                    ))
                }
            };
            let pred = ev_sum_bac(&spectrum, &bprime)?;
            return Ok(Some((pred, Some(bprime))));
        }
        PredictionSpec::Chain {
            b0,
            chain,
            b_state: spec,
        } => {
            let (b0, chain) = chain_matrices(s, b0, chain)?;
            let gens: BTreeSet<Generator> = b0
                .generators()
                .into_iter()
                .chain(chain.iter().flat_map(AlgMatrix::generators))
                .collect();
            ev_chain(&b0, &chain, &model()?, &b_state(spec)?, n, Some(&gens))?
        }
    };
    Ok(Some((pred, None)))
}

fn per_trial_prediction(s: &Scenario) -> bool {
    matches!(
        &s.prediction,
        PredictionSpec::SumBac {
            estimate: Some(_),
            ..
        }
    )
}

/// `Tr⊗ω((A₁B₁′⋯A_k(B_kB₀)′)^k)` for `k = 1..=3` in the analytic limit.
pub fn limit_moments(s: &Scenario) -> Result<Option<Vec<f64>>> {
    let PredictionSpec::Chain {
        b0,
        chain,
        b_state: spec,
    } = &s.prediction
    else {
        return Ok(None);
    };
    let (b0, mut chain) = chain_matrices(s, b0, chain)?;
    let last = chain.len() - 1;
    chain[last] = chain[last].mul(&b0)?;
    let model = s.prediction_model(Truncation::Analytic)?;
    let state = b_state(spec)?;
    (1..=3)
        .map(|k| Ok(chain_moment(&chain, k, &model, &state)?.re))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn run_trial(
    s: &Scenario,
    t: usize,
    shared: Option<&Prediction>,
    expr: &NCPolynomial,
) -> Result<TrialReport> {
    let sample = sample_trial(s, t)?;
    let dim = sample
        .a
        .first()
        .or(sample.b.first())
        .map_or(s.n, |m| m.nrows());
    let r = Realization {
        a: &sample.a,
        b: &sample.b,
        dim,
    };
    let x = r.polynomial(expr)?;
    let defect = hermiticity_defect(&x);
    if defect > 1e-8 {
        return Err(Error::NotSelfadjoint(format!(
            "trial {t}: `{}` evaluates to a matrix with Hermiticity defect {defect:e}",
            s.expression
        )));
    }
    let x = hermitian_part(&x);
    let spectrum = hermitian_spectrum(&x)?;
    let moments: Vec<f64> = (1..=3).map(|k| trace_power(&x, k).re).collect();
    let mut report = TrialReport {
        trial: t,
        eigenvalues: spectrum.values().to_vec(),
        moments,
        distance: None,
        predicted_eigenvalues: None,
        beta: None,
        diagnostics: TrialDiagnostics {
            hermiticity_defect: defect,
            ..sample.diagnostics.clone()
        },
    };
    let own;
    let predicted = if per_trial_prediction(s) {
        let (p, beta) = predict(s, Some(&sample))?.expect("per-trial recipe yields a prediction");
        report.beta = beta.map(|b| {
            (0..b.nrows())
                .map(|i| (0..b.ncols()).map(|j| b[(i, j)].re).collect())
                .collect()
        });
        report.predicted_eigenvalues = Some(p.multiset.values().to_vec());
        own = p;
        Some(&own)
    } else {
        shared
    };
    if let Some(p) = predicted {
        let m = s.compare_top.min(spectrum.len()).min(p.multiset.len());
        report.distance = Some(match_distance(&spectrum, &p.multiset, m)?);
    }
    Ok(report)
}

/// Runs every trial (in parallel) and aggregates the report.
pub fn run_scenario(s: &Scenario) -> Result<Report> {
    s.validate()?;
    let expr = parse_expression(&s.expression, &Symbols::infer(&s.expression))?;
    let shared = if per_trial_prediction(s) {
        None
    } else {
        predict(s, None)?.map(|(p, _)| p)
    };
    let trials = (0..s.trials)
        .into_par_iter()
        .map(|t| run_trial(s, t, shared.as_ref(), &expr))
        .collect::<Result<Vec<_>>>()?;
    let count = trials.len() as f64;
    let distances: Vec<MatchDistance> = trials.iter().filter_map(|t| t.distance).collect();
    let summary = Summary {
        mean_max_abs: (!distances.is_empty())
            .then(|| distances.iter().map(|d| d.max_abs).sum::<f64>() / distances.len() as f64),
        mean_max_rel: (!distances.is_empty())
            .then(|| distances.iter().map(|d| d.max_rel).sum::<f64>() / distances.len() as f64),
        max_max_rel: (!distances.is_empty())
            .then(|| distances.iter().map(|d| d.max_rel).fold(0.0, f64::max)),
        mean_moments: (0..3)
            .map(|k| trials.iter().map(|t| t.moments[k]).sum::<f64>() / count)
            .collect(),
    };
    let predicted_moments = shared
        .as_ref()
        .map(|p| (1..=3).map(|k| p.moment(k)).collect());
    Ok(Report {
        scenario: s.clone(),
        prediction: shared,
        predicted_moments,
        limit_moments: limit_moments(s)?,
        trials,
        summary,
    })
}
