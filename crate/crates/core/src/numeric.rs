//! Dense complex matrix helpers shared by the recipes and the scenario runner.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::ncalg::{Family, Letter, NCPolynomial, Word};
use crate::{CMatrix, C64};

/// Largest entry of `|M - M*|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|x| x * 0.5)
}

pub fn real_diagonal(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| C64::new(v, 0.0)),
    ))
}

/// `S ⊗ I_block`: every scalar entry becomes a scaled identity block.
pub fn kron_identity(s: &CMatrix, block: usize) -> CMatrix {
    let mut out = CMatrix::zeros(s.nrows() * block, s.ncols() * block);
    for i in 0..s.nrows() {
        for j in 0..s.ncols() {
            let c = s[(i, j)];
            if c != C64::new(0.0, 0.0) {
                for d in 0..block {
                    out[(i * block + d, j * block + d)] = c;
                }
            }
        }
    }
    out
}

/// Assembles a block matrix from a row-major grid of equally sized blocks.
pub fn from_blocks(blocks: &[Vec<CMatrix>]) -> Result<CMatrix> {
    let rows = blocks.len();
    let cols = blocks.first().map_or(0, Vec::len);
    let dim = blocks
        .first()
        .and_then(|r| r.first())
        .map_or(0, |m| m.nrows());
    let mut out = CMatrix::zeros(rows * dim, cols * dim);
    for (i, row) in blocks.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch("ragged block grid".into()));
        }
        for (j, b) in row.iter().enumerate() {
            if b.nrows() != dim || b.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "block ({i},{j}) is {}x{}, expected {dim}x{dim}",
                    b.nrows(),
                    b.ncols()
                )));
            }
            out.view_mut((i * dim, j * dim), (dim, dim)).copy_from(b);
        }
    }
    Ok(out)
}

pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(total, total);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, at), (b.nrows(), b.ncols())).copy_from(b);
        at += b.nrows();
    }
    out
}

/// Trace of `X^k` without forming more than one extra power.
pub fn trace_power(x: &CMatrix, k: u32) -> C64 {
    match k {
        0 => C64::new(x.nrows() as f64, 0.0),
        1 => x.trace(),
        _ => {
            let half = k / 2;
            let mut p = x.clone();
            for _ in 1..half {
                p = &p * x;
            }
            let q = if k.is_multiple_of(2) {
                p.clone()
            } else {
                &p * x
            };
            // tr(PQ) = Σ_ij P_ij Q_ji
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..p.nrows() {
                for j in 0..p.ncols() {
                    acc += p[(i, j)] * q[(j, i)];
                }
            }
            acc
        }
    }
}

/// Matrices standing in for each generator when a polynomial is evaluated
/// numerically.
pub struct Realization<'a> {
    pub a: &'a [CMatrix],
    pub b: &'a [CMatrix],
    pub dim: usize,
}

impl Realization<'_> {
    fn matrix(&self, l: Letter) -> Result<&CMatrix> {
        let pool = match l.family {
            Family::A => self.a,
            Family::B => self.b,
        };
        let m = pool.get(l.index as usize - 1).ok_or_else(|| {
            Error::NotInDomain(format!(
                "no matrix supplied for generator {}",
                l.generator()
            ))
        })?;
        if m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "generator {} is {}x{}, expected {}",
                l.generator(),
                m.nrows(),
                m.ncols(),
                self.dim
            )));
        }
        Ok(m)
    }

    pub fn word(&self, w: &Word) -> Result<CMatrix> {
        let mut letters = w.letters().iter();
        let Some(&first) = letters.next() else {
            return Ok(CMatrix::identity(self.dim, self.dim));
        };
        let m = self.matrix(first)?;
        let mut acc = if first.starred {
            m.adjoint()
        } else {
            m.clone()
        };
        for &l in letters {
            let m = self.matrix(l)?;
            acc = if l.starred {
                &acc * m.adjoint()
            } else {
                &acc * m
            };
        }
        Ok(acc)
    }

    pub fn polynomial(&self, p: &NCPolynomial) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (w, c) in p.terms() {
            out += self.word(w)? * *c;
        }
        Ok(out)
    }
}

/// Writes a complex matrix as CSV: one matrix row per line, each entry as a
/// `re,im` column pair.
pub fn write_matrix_csv(m: &CMatrix, mut out: impl Write) -> std::io::Result<()> {
    for i in 0..m.nrows() {
        let line: Vec<String> = (0..m.ncols())
            .map(|j| format!("{},{}", m[(i, j)].re, m[(i, j)].im))
            .collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn read_matrix_csv(input: impl BufRead) -> Result<CMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Invalid(format!("matrix csv line {}: {e}", lineno + 1)))?;
        if nums.len() % 2 != 0 {
            return Err(Error::Invalid(format!(
                "matrix csv line {}: odd number of columns",
                lineno + 1
            )));
        }
        rows.push(nums.chunks(2).map(|p| C64::new(p[0], p[1])).collect());
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("matrix csv is not square".into()));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}
