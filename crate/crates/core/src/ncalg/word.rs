use std::fmt;

use serde::{Deserialize, Serialize};

/// The two generator families: trace-class elements (`A`) and elements of the
/// state algebra (`B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn prefix(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
        }
    }
}

/// A generator without its adjoint marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub family: Family,
    pub index: u32,
}

impl Generator {
    pub fn a(index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Generator {
            family: Family::A,
            index,
        }
    }

    pub fn b(index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Generator {
            family: Family::B,
            index,
        }
    }

    pub fn letter(self) -> Letter {
        Letter {
            family: self.family,
            index: self.index,
            starred: false,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

/// One occurrence of a generator, possibly adjointed.
///
/// Field order fixes the canonical ordering: family, then index, then star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub family: Family,
    pub index: u32,
    pub starred: bool,
}

impl Letter {
    pub fn a(index: u32) -> Self {
        Generator::a(index).letter()
    }

    pub fn b(index: u32) -> Self {
        Generator::b(index).letter()
    }

    pub fn star(self) -> Self {
        Letter {
            starred: !self.starred,
            ..self
        }
    }

    pub fn generator(self) -> Generator {
        Generator {
            family: self.family,
            index: self.index,
        }
    }

    pub fn is_a(self) -> bool {
        self.family == Family::A
    }

    pub fn is_b(self) -> bool {
        self.family == Family::B
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)?;
        if self.starred {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A finite product of letters; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Reverses the word and toggles every star.
    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.star()).collect())
    }

    pub fn has_a(&self) -> bool {
        self.0.iter().any(|l| l.is_a())
    }

    pub fn has_b(&self) -> bool {
        self.0.iter().any(|l| l.is_b())
    }

    /// Nonempty and made of A-letters only.
    pub fn is_pure_a(&self) -> bool {
        !self.is_unit() && !self.has_b()
    }

    /// Made of B-letters only; the unit counts as pure-B.
    pub fn is_pure_b(&self) -> bool {
        !self.has_a()
    }

    /// Cyclic rotation moving the first `shift` letters to the end.
    pub fn rotate(&self, shift: usize) -> Word {
        if self.is_unit() {
            return Word::unit();
        }
        let mut letters = self.0.clone();
        letters.rotate_left(shift % self.len());
        Word(letters)
    }

    /// Lexicographically smallest cyclic rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.len().max(1))
            .map(|j| self.rotate(j))
            .min()
            .unwrap_or_default()
    }

    /// Drops the star on every letter whose generator satisfies `selfadjoint`.
    pub fn strip_stars(&self, selfadjoint: impl Fn(Generator) -> bool) -> Word {
        Word(
            self.0
                .iter()
                .map(|&l| {
                    if l.starred && selfadjoint(l.generator()) {
                        l.star()
                    } else {
                        l
                    }
                })
                .collect(),
        )
    }

    /// Splits the word into maximal A-runs and B-runs.
    pub fn alternating_form(&self) -> AlternatingForm {
        let letters = &self.0;
        let mut pos = 0;
        while pos < letters.len() && letters[pos].is_b() {
            pos += 1;
        }
        let leading_b = Word(letters[..pos].to_vec());
        let mut blocks = Vec::new();
        while pos < letters.len() {
            let start = pos;
            while pos < letters.len() && letters[pos].is_a() {
                pos += 1;
            }
            let a_block = Word(letters[start..pos].to_vec());
            let start = pos;
            while pos < letters.len() && letters[pos].is_b() {
                pos += 1;
            }
            blocks.push((a_block, Word(letters[start..pos].to_vec())));
        }
        AlternatingForm { leading_b, blocks }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `leading_b · a_1 b_1 · a_2 b_2 ⋯` with maximal runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    pub leading_b: Word,
    pub blocks: Vec<(Word, Word)>,
}

impl AlternatingForm {
    pub fn reconstruct(&self) -> Word {
        let mut w = self.leading_b.clone();
        for (a, b) in &self.blocks {
            w = w.concat(a).concat(b);
        }
        w
    }

    /// Folds the leading B-run into the last B-block, i.e. rotates the word
    /// so that it starts with an A-letter. Returns `None` for pure-B words.
    pub fn rotated(&self) -> Option<Vec<(Word, Word)>> {
        if self.blocks.is_empty() {
            return None;
        }
        let mut blocks = self.blocks.clone();
        let last = blocks.last_mut().expect("nonempty");
        last.1 = last.1.concat(&self.leading_b);
        Some(blocks)
    }
}
