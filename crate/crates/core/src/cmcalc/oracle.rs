//! Brute-force moments from the cyclic monotone factorization
//! `ω(a₁b₁⋯aₙbₙ) = ω(a₁⋯aₙ) τ(b₁)⋯τ(bₙ)`.

use std::collections::{BTreeMap, HashMap};

use super::model::TraceWeight;
use super::state::Tracial;
use crate::error::{Error, Result};
use crate::ncalg::{Family, Letter, NCPolynomial, Word};
use crate::C64;

/// Mixed moment of a word containing at least one A-letter.
///
/// The leading B-run is rotated onto the final B-block (traciality of ω),
/// then every maximal B-run is replaced by its τ-value and the A-runs are
/// concatenated.
pub fn cm_moment(w: &Word, a_model: &dyn TraceWeight, b_state: &dyn Tracial) -> Result<C64> {
    let (scalar, a_product) = factorize(w, b_state)?;
    Ok(scalar * a_model.omega(&a_product)?)
}

/// The τ-part and the concatenated A-letters of the factorization.
fn factorize(w: &Word, b_state: &dyn Tracial) -> Result<(C64, Word)> {
    let blocks = w.alternating_form().rotated().ok_or_else(|| {
        Error::NotInDomain(format!(
            "`{w}` has no A-letter, so it is not in the domain of ω"
        ))
    })?;
    let mut a_product = Word::unit();
    let mut scalar = C64::new(1.0, 0.0);
    for (a_block, b_block) in &blocks {
        a_product = a_product.concat(a_block);
        if !b_block.is_unit() {
            scalar *= b_state.tau(b_block)?;
        }
    }
    Ok((scalar, a_product))
}

/// `ω(p^m)` by linear extension of [`cm_moment`] over the expanded power.
///
/// A-products that agree up to rotation share one ω evaluation.
pub fn poly_moment(
    p: &NCPolynomial,
    m: u32,
    a_model: &dyn TraceWeight,
    b_state: &dyn Tracial,
) -> Result<C64> {
    let expanded = p.power(m);
    let mut grouped: HashMap<Word, C64> = HashMap::new();
    for (w, c) in expanded.terms() {
        let (scalar, a_product) = factorize(w, b_state)?;
        *grouped.entry(a_product.min_rotation()).or_default() += c * scalar;
    }
    let mut total = C64::new(0.0, 0.0);
    for (w, c) in &grouped {
        total += c * a_model.omega(w)?;
    }
    Ok(total)
}

/// Replaces every interior B-run of `w` by its τ-value.
///
/// `w` must start and end with an A-letter. Returns the product of the
/// τ-values and the concatenated A-letters.
pub fn collapse_internal_b_runs(w: &Word, b_state: &dyn Tracial) -> Result<(C64, Word)> {
    let letters = w.letters();
    match (letters.first(), letters.last()) {
        (Some(first), Some(last)) if first.is_a() && last.is_a() => {}
        _ => {
            return Err(Error::NotInDomain(format!(
                "`{w}` must begin and end with A-letters to be collapsed"
            )))
        }
    }
    let mut scalar = C64::new(1.0, 0.0);
    let mut reduced = Word::unit();
    for (a_block, b_block) in &w.alternating_form().blocks {
        reduced = reduced.concat(a_block);
        if !b_block.is_unit() {
            scalar *= b_state.tau(b_block)?;
        }
    }
    Ok((scalar, reduced))
}

/// Collapses the interior B-runs of every word of `p` (the part between its
/// first and last A-letter), leaving the outer B-runs in place.
///
/// `a + babab` becomes `a + τ(b)·baab`. Moments of the result agree with
/// those of `p` because every collapsed run stays flanked by A-letters in any
/// product.
pub fn collapse_interior_runs(p: &NCPolynomial, b_state: &dyn Tracial) -> Result<NCPolynomial> {
    let mut out = NCPolynomial::zero();
    for (w, c) in p.terms() {
        let letters = w.letters();
        let (Some(first), Some(last)) = (
            letters.iter().position(|l| l.is_a()),
            letters.iter().rposition(|l| l.is_a()),
        ) else {
            out.add_term(w.clone(), *c);
            continue;
        };
        let (scalar, core) =
            collapse_internal_b_runs(&Word::new(letters[first..=last].to_vec()), b_state)?;
        let rebuilt = Word::new(letters[..first].to_vec())
            .concat(&core)
            .concat(&Word::new(letters[last + 1..].to_vec()));
        out.add_term(rebuilt, c * scalar);
    }
    Ok(out)
}

/// `a · c · a*` as a word, the conjugate used to build new A-elements.
pub fn conjugate_composite(a_letters: &Word, c: &Word) -> Result<Word> {
    if !a_letters.is_pure_a() {
        return Err(Error::NotInDomain(format!(
            "`{a_letters}` is not a nonempty pure-A word"
        )));
    }
    if !c.is_pure_b() {
        return Err(Error::NotInDomain(format!("`{c}` is not a pure-B word")));
    }
    Ok(a_letters.concat(c).concat(&a_letters.adjoint()))
}

/// A trace-class family extended by derived A-generators, each defined as
/// `scalar · expansion` where `expansion` begins and ends with A-letters.
///
/// Moments of words in the derived generators are computed by substituting
/// the expansions and calling [`cm_moment`] against the base model.
pub struct CompositeFamily<'a> {
    base: &'a dyn TraceWeight,
    state: &'a dyn Tracial,
    composites: BTreeMap<u32, (C64, Word)>,
}

impl<'a> CompositeFamily<'a> {
    pub fn new(base: &'a dyn TraceWeight, state: &'a dyn Tracial) -> Self {
        CompositeFamily {
            base,
            state,
            composites: BTreeMap::new(),
        }
    }

    /// Registers `a{index} := scalar · expansion`.
    pub fn register(&mut self, index: u32, scalar: C64, expansion: Word) -> Result<()> {
        let ok = matches!(
            (expansion.letters().first(), expansion.letters().last()),
            (Some(f), Some(l)) if f.is_a() && l.is_a()
        );
        if !ok {
            return Err(Error::NotInDomain(format!(
                "composite `{expansion}` must begin and end with A-letters"
            )));
        }
        if expansion
            .letters()
            .iter()
            .any(|l| l.is_a() && self.composites.contains_key(&l.index))
        {
            return Err(Error::Invalid(
                "composites may not reference other composites".into(),
            ));
        }
        self.composites.insert(index, (scalar, expansion));
        Ok(())
    }

    /// Substitutes every composite letter (starred composites by the adjoint
    /// of their expansion).
    pub fn expand(&self, w: &Word) -> (C64, Word) {
        let mut scalar = C64::new(1.0, 0.0);
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in w.letters() {
            match (l.family, self.composites.get(&l.index)) {
                (Family::A, Some((c, e))) => {
                    if l.starred {
                        scalar *= c.conj();
                        out.extend_from_slice(e.adjoint().letters());
                    } else {
                        scalar *= c;
                        out.extend_from_slice(e.letters());
                    }
                }
                _ => out.push(l),
            }
        }
        (scalar, Word::new(out))
    }
}

impl TraceWeight for CompositeFamily<'_> {
    fn omega(&self, word: &Word) -> Result<C64> {
        let (scalar, expanded) = self.expand(word);
        if expanded.has_b() {
            Ok(scalar * cm_moment(&expanded, self.base, self.state)?)
        } else {
            Ok(scalar * self.base.omega(&expanded)?)
        }
    }
}
