use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::{Generator, Letter, Word};
use crate::C64;

/// Finite complex-linear combination of words. Zero coefficients are never
/// stored, so structurally equal maps mean equal polynomials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, C64>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::monomial(c, Word::unit())
    }

    pub fn monomial(c: C64, word: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn word(word: Word) -> Self {
        Self::monomial(C64::new(1.0, 0.0), word)
    }

    pub fn letter(letter: Letter) -> Self {
        Self::word(Word::new(vec![letter]))
    }

    pub fn generator(g: Generator) -> Self {
        Self::letter(g.letter())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, C64)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, c: C64) {
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                if c != C64::new(0.0, 0.0) {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == C64::new(0.0, 0.0) {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> C64 {
        self.terms.get(word).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Every word is nonempty and uses A-letters only.
    pub fn is_pure_a(&self) -> bool {
        self.terms.keys().all(Word::is_pure_a)
    }

    /// Every word uses B-letters only; the unit is allowed.
    pub fn is_pure_b(&self) -> bool {
        self.terms.keys().all(Word::is_pure_b)
    }

    pub fn has_unit_term(&self) -> bool {
        self.terms.contains_key(&Word::unit())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, k)| (w.clone(), k * c)))
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, x) in &self.terms {
            for (v, y) in &other.terms {
                out.add_term(u.concat(v), x * y);
            }
        }
        out
    }

    /// `p^m` by repeated right multiplication.
    pub fn power(&self, m: u32) -> Self {
        assert!(m >= 1, "power requires m >= 1");
        let mut out = self.clone();
        for _ in 1..m {
            out = out.multiply(self);
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.adjoint(), c.conj())))
    }

    pub fn strip_stars(&self, selfadjoint: &BTreeSet<Generator>) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.strip_stars(|g| selfadjoint.contains(&g)), *c)),
        )
    }

    /// True iff the polynomial equals its adjoint once `x'` is identified
    /// with `x` for the declared selfadjoint generators.
    pub fn is_selfadjoint(&self, selfadjoint: &BTreeSet<Generator>) -> bool {
        self.strip_stars(selfadjoint) == self.adjoint().strip_stars(selfadjoint)
    }

    /// Same as [`is_selfadjoint`](Self::is_selfadjoint) but allows a relative
    /// coefficient tolerance.
    pub fn is_selfadjoint_approx(&self, selfadjoint: &BTreeSet<Generator>, tol: f64) -> bool {
        self.strip_stars(selfadjoint)
            .approx_eq(&self.adjoint().strip_stars(selfadjoint), tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = self
            .terms
            .values()
            .chain(other.terms.values())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let diff = self - other;
        diff.terms
            .values()
            .all(|c| c.norm() <= tol * scale.max(1.0))
    }

    /// Every generator that occurs in some word.
    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().map(|l| l.generator()))
            .collect()
    }
}

fn fmt_real(x: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_sign_negative() && x != 0.0 {
        write!(f, "-{}", -x)
    } else {
        write!(f, "{}", x.abs())
    }
}

fn fmt_coefficient(c: C64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im == 0.0 {
        fmt_real(c.re, f)
    } else {
        f.write_str("(")?;
        fmt_real(c.re, f)?;
        f.write_str(" + ")?;
        fmt_real(c.im, f)?;
        f.write_str("*i)")
    }
}

/// Prints in the expression grammar, so the output re-parses to the same
/// polynomial.
impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let one = *c == C64::new(1.0, 0.0);
            if w.is_unit() {
                fmt_coefficient(*c, f)?;
            } else if one {
                write!(f, "{w}")?;
            } else {
                fmt_coefficient(*c, f)?;
                write!(f, "*{w}")?;
            }
        }
        Ok(())
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: NCPolynomial) -> NCPolynomial {
        &self + &rhs
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: NCPolynomial) -> NCPolynomial {
        &self - &rhs
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Neg for NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        -&self
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.multiply(rhs)
    }
}

impl Mul for NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: NCPolynomial) -> NCPolynomial {
        self.multiply(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab_plus_ba() -> NCPolynomial {
        let a = NCPolynomial::letter(Letter::a(1));
        let b = NCPolynomial::letter(Letter::b(1));
        &(&a * &b) + &(&b * &a)
    }

    #[test]
    fn power_of_anticommutator_has_four_words() {
        let sq = ab_plus_ba().power(2);
        assert_eq!(sq.num_terms(), 4);
        assert!(sq.terms().all(|(w, _)| w.len() == 4));
    }

    #[test]
    fn unit_is_identity() {
        let p = ab_plus_ba();
        assert_eq!(NCPolynomial::one().multiply(&p), p);
        assert_eq!(p.multiply(&NCPolynomial::one()), p);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = ab_plus_ba();
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn adjoint_of_single_word() {
        let p = NCPolynomial::monomial(
            C64::new(2.0, 3.0),
            Word::new(vec![Letter::a(1), Letter::b(1)]),
        );
        let adj = p.adjoint();
        let w = Word::new(vec![Letter::b(1).star(), Letter::a(1).star()]);
        assert_eq!(adj.coefficient(&w), C64::new(2.0, -3.0));
        assert_eq!(adj.num_terms(), 1);
    }

    #[test]
    fn selfadjointness() {
        let sa: BTreeSet<_> = [Generator::a(1), Generator::b(1)].into();
        assert!(ab_plus_ba().is_selfadjoint(&sa));
        let ab = NCPolynomial::word(Word::new(vec![Letter::a(1), Letter::b(1)]));
        assert!(!ab.is_selfadjoint(&sa));
        let a = NCPolynomial::letter(Letter::a(1));
        let b = NCPolynomial::letter(Letter::b(1));
        let comm = (&(&a * &b) - &(&b * &a)).scale(C64::new(0.0, 1.0));
        assert!(comm.is_selfadjoint(&sa));
        // Without the declaration a1 and a1' are different letters.
        assert!(!comm.is_selfadjoint(&BTreeSet::new()));
    }
}
