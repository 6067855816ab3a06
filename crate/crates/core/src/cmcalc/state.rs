//! Models for the state τ on the B-family.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncalg::{parse_expression, Generator, Symbols, Word};
use crate::numeric::Realization;
use crate::{CMatrix, C64};

/// Anything that evaluates τ on pure-B words.
pub trait Tracial {
    fn tau(&self, word: &Word) -> Result<C64>;
}

/// Finite table of moments, keyed by the minimal cyclic rotation of each word.
#[derive(Clone, Debug)]
pub struct MomentTable {
    degree_cap: usize,
    selfadjoint: Option<BTreeSet<u32>>,
    moments: HashMap<Word, C64>,
}

impl MomentTable {
    /// Empty table. With `selfadjoint = None` every B-generator is treated as
    /// selfadjoint, otherwise only the listed indices are.
    pub fn new(degree_cap: usize, selfadjoint: Option<BTreeSet<u32>>) -> Self {
        MomentTable {
            degree_cap,
            selfadjoint,
            moments: HashMap::new(),
        }
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    fn canonical(&self, word: &Word) -> Word {
        word.strip_stars(|g| self.is_selfadjoint(g)).min_rotation()
    }

    fn is_selfadjoint(&self, g: Generator) -> bool {
        self.selfadjoint
            .as_ref()
            .is_none_or(|s| s.contains(&g.index))
    }

    /// Stores `τ(word) = value` after checking it against the entries already
    /// implied by traciality and `τ(w*) = conj τ(w)`.
    pub fn insert(&mut self, word: &Word, value: C64) -> Result<()> {
        if !word.is_pure_b() {
            return Err(Error::Invalid(format!(
                "moment key `{word}` is not a pure-B word"
            )));
        }
        if word.len() > self.degree_cap {
            return Err(Error::DegreeExceeded {
                degree: word.len(),
                cap: self.degree_cap,
            });
        }
        if word.is_unit() {
            if (value - C64::new(1.0, 0.0)).norm() > 1e-12 {
                return Err(Error::Invalid("τ(1) must be 1".into()));
            }
            return Ok(());
        }
        let key = self.canonical(word);
        let adj = self.canonical(&word.adjoint());
        let expected_adj = value.conj();
        if key == adj && value.im.abs() > 1e-12 * value.norm().max(1.0) {
            return Err(Error::Invalid(format!(
                "τ({word}) must be real since the word is selfadjoint up to rotation"
            )));
        }
        if let Some(&existing) = self.moments.get(&adj) {
            if key != adj && (existing - expected_adj).norm() > 1e-12 * existing.norm().max(1.0) {
                return Err(Error::Invalid(format!(
                    "τ({word}) conflicts with the value of its adjoint"
                )));
            }
        }
        self.moments.insert(key, value);
        Ok(())
    }

    pub fn with(mut self, word: &Word, value: f64) -> Result<Self> {
        self.insert(word, C64::new(value, 0.0))?;
        Ok(self)
    }

    pub fn lookup(&self, word: &Word) -> Result<C64> {
        if word.is_unit() {
            return Ok(C64::new(1.0, 0.0));
        }
        if word.len() > self.degree_cap {
            return Err(Error::DegreeExceeded {
                degree: word.len(),
                cap: self.degree_cap,
            });
        }
        let key = self.canonical(word);
        if let Some(v) = self.moments.get(&key) {
            return Ok(*v);
        }
        let adj = self.canonical(&word.adjoint());
        if let Some(v) = self.moments.get(&adj) {
            return Ok(v.conj());
        }
        Err(Error::NotInDomain(format!(
            "moment table has no entry for τ({word})"
        )))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: MomentTableDoc = serde_json::from_str(text)?;
        doc.build()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_doc(&self) -> MomentTableDoc {
        let mut moments = BTreeMap::new();
        for (w, v) in &self.moments {
            moments.insert(w.to_string(), [v.re, v.im]);
        }
        MomentTableDoc {
            degree_cap: self.degree_cap,
            selfadjoint: self
                .selfadjoint
                .as_ref()
                .map(|s| s.iter().copied().collect()),
            moments,
        }
    }
}

/// JSON document form: `{"degree_cap": d, "moments": {"b1*b1": [re, im]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentTableDoc {
    pub degree_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selfadjoint: Option<Vec<u32>>,
    pub moments: BTreeMap<String, [f64; 2]>,
}

impl MomentTableDoc {
    pub fn build(&self) -> Result<MomentTable> {
        let mut table = MomentTable::new(
            self.degree_cap,
            self.selfadjoint
                .as_ref()
                .map(|s| s.iter().copied().collect()),
        );
        for (key, [re, im]) in &self.moments {
            let poly = parse_expression(key, &Symbols::infer(key))?;
            let mut terms = poly.terms();
            let (word, coeff) = match (terms.next(), terms.next()) {
                (Some((w, c)), None) if *c == C64::new(1.0, 0.0) => (w.clone(), c),
                _ => {
                    return Err(Error::Invalid(format!(
                        "moment key `{key}` must be a single word"
                    )))
                }
            };
            debug_assert_eq!(*coeff, C64::new(1.0, 0.0));
            table.insert(&word, C64::new(*re, *im))?;
        }
        Ok(table)
    }
}

/// Concrete matrices with the normalized trace.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    matrices: Vec<CMatrix>,
    dim: usize,
}

impl MatrixModel {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "matrix model needs at least one nonempty matrix".into(),
            ));
        }
        if matrices
            .iter()
            .any(|m| m.nrows() != dim || m.ncols() != dim)
        {
            return Err(Error::DimensionMismatch(
                "matrix model entries must share one square shape".into(),
            ));
        }
        Ok(MatrixModel { matrices, dim })
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }
}

/// Number of noncrossing pairings of `word` that only pair equal generators:
/// the moments of a free semicircular family with unit variance.
fn free_semicircular_moment(letters: &[Generator], memo: &mut HashMap<Vec<Generator>, f64>) -> f64 {
    if letters.is_empty() {
        return 1.0;
    }
    if letters.len() % 2 == 1 {
        return 0.0;
    }
    if let Some(&v) = memo.get(letters) {
        return v;
    }
    let mut total = 0.0;
    for j in (1..letters.len()).step_by(2) {
        if letters[j] == letters[0] {
            let inner = free_semicircular_moment(&letters[1..j], memo);
            if inner != 0.0 {
                total += inner * free_semicircular_moment(&letters[j + 1..], memo);
            }
        }
    }
    memo.insert(letters.to_vec(), total);
    total
}

/// State models for the B-family.
#[derive(Clone, Debug)]
pub enum TracialState {
    MomentTable(MomentTable),
    MatrixModel(MatrixModel),
    /// Free family of standard semicircular elements: the large-n limit of
    /// independent GUE matrices normalized so that `tr(G²) → 1`.
    FreeSemicircular,
}

impl TracialState {
    pub fn matrices(matrices: Vec<CMatrix>) -> Result<Self> {
        Ok(TracialState::MatrixModel(MatrixModel::new(matrices)?))
    }

    /// Single selfadjoint `b1` with prescribed `τ(b)` and `τ(b²)`.
    pub fn two_moments(tau_b: f64, tau_b2: f64) -> Self {
        let b = crate::ncalg::Letter::b(1);
        let table = MomentTable::new(2, None)
            .with(&Word::new(vec![b]), tau_b)
            .and_then(|t| t.with(&Word::new(vec![b, b]), tau_b2))
            .expect("two-moment table is consistent");
        TracialState::MomentTable(table)
    }
}

/// τ(w) for a pure-B word.
pub fn tau_eval(state: &TracialState, w: &Word) -> Result<C64> {
    if !w.is_pure_b() {
        return Err(Error::NotInDomain(format!(
            "τ is only evaluated on pure-B words, got `{w}`"
        )));
    }
    match state {
        TracialState::MomentTable(t) => t.lookup(w),
        TracialState::MatrixModel(m) => {
            let r = Realization {
                a: &[],
                b: &m.matrices,
                dim: m.dim,
            };
            Ok(r.word(w)?.trace() / m.dim as f64)
        }
        TracialState::FreeSemicircular => {
            let gens: Vec<Generator> = w.letters().iter().map(|l| l.generator()).collect();
            Ok(C64::new(
                free_semicircular_moment(&gens, &mut HashMap::new()),
                0.0,
            ))
        }
    }
}

impl Tracial for TracialState {
    fn tau(&self, word: &Word) -> Result<C64> {
        tau_eval(self, word)
    }
}
