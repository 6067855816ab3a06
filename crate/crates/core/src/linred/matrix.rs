//! Square matrices whose entries are noncommutative polynomials.

use std::collections::BTreeSet;
use std::fmt;

use crate::cmcalc::Tracial;
use crate::error::{Error, Result};
use crate::ncalg::{parse_expression, Generator, NCPolynomial, Symbols};
use crate::numeric::{from_blocks, Realization};
use crate::{CMatrix, C64};

/// `k × k` complex matrix, the image of an algebra matrix under `id ⊗ τ`.
pub type ScalarMatrix = CMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purity {
    PureA,
    PureB,
    Mixed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix {
    dim: usize,
    entries: Vec<NCPolynomial>,
}

impl AlgMatrix {
    /// Row-major entries.
    pub fn new(dim: usize, entries: Vec<NCPolynomial>) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{} entries do not form a nonempty {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(AlgMatrix { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<NCPolynomial>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(
                "algebra matrix rows must form a square".into(),
            ));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    /// Parses every entry with the expression grammar.
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>], symbols: &Symbols) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_expression(s.as_ref(), symbols))
                    .collect()
            })
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
        Self::from_rows(parsed)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_scalar(&CMatrix::identity(dim, dim))
    }

    pub fn diagonal(entries: Vec<NCPolynomial>) -> Self {
        let dim = entries.len();
        let mut out = vec![NCPolynomial::zero(); dim * dim];
        for (i, p) in entries.into_iter().enumerate() {
            out[i * dim + i] = p;
        }
        AlgMatrix { dim, entries: out }
    }

    pub fn from_scalar(s: &ScalarMatrix) -> Self {
        let dim = s.nrows();
        AlgMatrix {
            dim,
            entries: (0..dim * dim)
                .map(|k| NCPolynomial::constant(s[(k / dim, k % dim)]))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPolynomial {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[NCPolynomial] {
        &self.entries
    }

    /// Every entry is pure-A without a unit term; zero entries qualify.
    pub fn is_pure_a(&self) -> bool {
        self.entries.iter().all(NCPolynomial::is_pure_a)
    }

    /// Every entry is pure-B; the unit is allowed.
    pub fn is_pure_b(&self) -> bool {
        self.entries.iter().all(NCPolynomial::is_pure_b)
    }

    pub fn purity(&self) -> Purity {
        if self.is_pure_b() {
            Purity::PureB
        } else if self.is_pure_a() {
            Purity::PureA
        } else {
            Purity::Mixed
        }
    }

    pub fn mul(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        self.check_dim(other.dim)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NCPolynomial::zero();
                for l in 0..n {
                    let (x, y) = (self.get(i, l), other.get(l, j));
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &x.multiply(y);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(AlgMatrix { dim: n, entries })
    }

    /// `self · S` with `S` scalar, folding the scalars into coefficients.
    pub fn mul_scalar(&self, s: &ScalarMatrix) -> Result<AlgMatrix> {
        self.check_dim(s.nrows())?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NCPolynomial::zero();
                for l in 0..n {
                    let c = s[(l, j)];
                    if c != C64::new(0.0, 0.0) && !self.get(i, l).is_zero() {
                        acc = &acc + &self.get(i, l).scale(c);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(AlgMatrix { dim: n, entries })
    }

    pub fn adjoint(&self) -> AlgMatrix {
        let n = self.dim;
        AlgMatrix {
            dim: n,
            entries: (0..n * n)
                .map(|k| self.get(k % n, k / n).adjoint())
                .collect(),
        }
    }

    pub fn trace(&self) -> NCPolynomial {
        (0..self.dim).fold(NCPolynomial::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn power(&self, m: u32) -> Result<AlgMatrix> {
        assert!(m >= 1, "power requires m >= 1");
        let mut out = self.clone();
        for _ in 1..m {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Equal to its adjoint after identifying `x'` with `x` for the listed
    /// selfadjoint generators.
    pub fn is_selfadjoint(&self, selfadjoint: &BTreeSet<Generator>) -> bool {
        let adj = self.adjoint();
        self.entries.iter().zip(&adj.entries).all(|(x, y)| {
            x.strip_stars(selfadjoint)
                .approx_eq(&y.strip_stars(selfadjoint), 1e-12)
        })
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.entries
            .iter()
            .flat_map(NCPolynomial::generators)
            .collect()
    }

    /// Numeric `(dim·d) × (dim·d)` matrix with every entry realized by `r`.
    pub fn realize(&self, r: &Realization) -> Result<CMatrix> {
        let n = self.dim;
        let blocks = (0..n)
            .map(|i| (0..n).map(|j| r.polynomial(self.get(i, j))).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        from_blocks(&blocks)
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim != other {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, other
            )));
        }
        Ok(())
    }
}

impl fmt::Display for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `id ⊗ τ` applied entrywise to a pure-B matrix.
pub fn reduce_b_matrix(b: &AlgMatrix, state: &dyn Tracial) -> Result<ScalarMatrix> {
    if !b.is_pure_b() {
        return Err(Error::NotInDomain(
            "B-matrix has entries outside the B-algebra".into(),
        ));
    }
    let n = b.dim;
    let mut out = ScalarMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (w, c) in b.get(i, j).terms() {
                acc += c * state.tau(w)?;
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
