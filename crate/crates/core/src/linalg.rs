//! Dense exact linear algebra over ℚ(i).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::GaussianRational;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: expected {cols} entries, found {}",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<GaussianRational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::LengthMismatch { expected: rows, found: col.len() });
            }
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        Ok(m)
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussianRational::from(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// Copy of rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m[(r - r0, c - c0)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_submatrix(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn vstack(parts: &[ExactMatrix]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::DimensionMismatch("vstack: column counts differ".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Ok(Self { rows, cols, data })
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.set_submatrix(0, 0, self);
        m.set_submatrix(0, self.cols, other);
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, found: v.len() });
        }
        let mut out = vec![GaussianRational::zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, b) in self.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[c] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let row = rhs.vec_mul(self.row(r))?;
            for (c, v) in row.into_iter().enumerate() {
                out[(r, c)] = v;
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix dimensions do not agree")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form and its pivot columns (0-based, ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. The pivot in each column is the first non-zero
/// entry at or below the current row.
pub fn rref(m: &ExactMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].inv().expect("pivot is non-zero");
        for c in col..a.cols {
            if !a[(row, c)].is_zero() {
                a[(row, c)] = &a[(row, c)] * &inv;
            }
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols {
                if a[(row, c)].is_zero() {
                    continue;
                }
                let delta = &factor * &a[(row, c)];
                a[(r, c)] -= &delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { reduced: a, pivots }
}

pub fn rank(m: &ExactMatrix) -> usize {
    rref(m).pivots.len()
}

fn nullspace_from_rref(r: &Rref) -> ExactMatrix {
    let cols = r.reduced.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = ExactMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = GaussianRational::one();
        for (prow, &pc) in r.pivots.iter().enumerate() {
            let v = &r.reduced[(prow, f)];
            if !v.is_zero() {
                basis[(pc, k)] = -v;
            }
        }
    }
    basis
}

/// Canonical kernel basis: one column per free column of the RREF, with
/// that free coordinate set to 1 and the other free coordinates 0.
pub fn nullspace(m: &ExactMatrix) -> ExactMatrix {
    nullspace_from_rref(&rref(m))
}

/// Result of a consistent linear system `M v = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// The solution with every free variable set to zero.
    pub particular: Vec<GaussianRational>,
    /// Kernel basis of `M`, as columns.
    pub homogeneous: ExactMatrix,
}

/// Solves `M v = b`; [`Error::Inconsistent`] when `rank M < rank [M|b]`.
pub fn solve(m: &ExactMatrix, b: &[GaussianRational]) -> Result<LinearSolution> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let bcol = ExactMatrix::from_columns(m.rows, &[b.to_vec()])?;
    let augmented = rref(&m.hstack(&bcol)?);
    if augmented.pivots.last() == Some(&m.cols) {
        return Err(Error::Inconsistent);
    }
    let mut particular = vec![GaussianRational::zero(); m.cols];
    for (prow, &pc) in augmented.pivots.iter().enumerate() {
        particular[pc] = augmented.reduced[(prow, m.cols)].clone();
    }
    let reduced = augmented.reduced.submatrix(0, m.rows, 0, m.cols);
    let homogeneous = nullspace_from_rref(&Rref { reduced, pivots: augmented.pivots });
    Ok(LinearSolution { particular, homogeneous })
}

/// Whether the column spans of `a` and `b` coincide.
pub fn span_equal(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "span comparison of {}-row and {}-row matrices",
            a.rows, b.rows
        )));
    }
    let ra = rank(a);
    Ok(ra == rank(b) && ra == rank(&a.hstack(b)?))
}
