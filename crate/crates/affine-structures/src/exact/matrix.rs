//! Dense matrices over exact rationals with canonical elimination.
//!
//! The two workhorses are [`RatMatrix::rank_nullspace`] and
//! [`RatMatrix::solve_linear`]. Both run fraction-based Gauss–Jordan
//! elimination to reduced row echelon form, so their outputs are canonical:
//! nullspace bases can be compared verbatim against frozen expected values,
//! and underdetermined solves always return the representative with free
//! variables set to zero.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{One, Zero};
use thiserror::Error;

use super::rational::Rational;

/// Row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Errors for matrix constructors and structured operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry count {got} does not match {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric (entry ({0},{1}) differs from ({1},{0}))")]
    NotSymmetric(usize, usize),
}

impl RatMatrix {
    /// Builds a matrix from a row-major entry list.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers (row-major).
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        RatMatrix::new(
            rows,
            cols,
            entries.iter().map(|&v| super::rational::rat_int(v)).collect(),
        )
        .expect("shape checked by caller")
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    /// Row `r` as a freshly cloned vector.
    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    /// Column `c` as a freshly cloned vector.
    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.at(r, c) * &v[c])
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "trace requires a square matrix");
        (0..self.rows).fold(Rational::zero(), |acc, i| acc + self.at(i, i))
    }

    /// Reduced row echelon form together with the pivot column list.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.at(p, c).clone();
                    let b = m.at(row, c).clone();
                    *m.at_mut(p, c) = b;
                    *m.at_mut(row, c) = a;
                }
            }
            let inv = Rational::one() / m.at(row, col).clone();
            for c in col..m.cols {
                let v = m.at(row, c).clone() * &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).clone() - &factor * m.at(row, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank and canonical nullspace basis.
    ///
    /// The basis is derived from the reduced echelon form: one vector per free
    /// column, carrying 1 in its free coordinate and the negated pivot-row
    /// entries elsewhere. This form is unique, so tests may compare it verbatim.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Rational>>) {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(i, free).clone();
            }
            basis.push(v);
        }
        (rank, basis)
    }

    pub fn rank(&self) -> usize {
        self.rank_nullspace().0
    }

    /// Solves `self · x = b` exactly.
    ///
    /// Returns `None` when the system is inconsistent. When the solution space
    /// is positive-dimensional the representative with all free variables set
    /// to zero is returned.
    pub fn solve_linear(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side must match row count");
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by fraction Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant requires a square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                for c in 0..n {
                    let a = m.at(p, c).clone();
                    let b = m.at(col, c).clone();
                    *m.at_mut(p, c) = b;
                    *m.at_mut(col, c) = a;
                }
                det = -det;
            }
            det *= m.at(col, col).clone();
            let inv = Rational::one() / m.at(col, col).clone();
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone() * &inv;
                    for c in col..n {
                        let v = m.at(r, c).clone() - &factor * m.at(col, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
        }
        det
    }

    /// Exact inverse, or an error when singular.
    pub fn inverse(&self) -> Result<RatMatrix, MatrixError> {
        assert_eq!(self.rows, self.cols, "inverse requires a square matrix");
        let n = self.rows;
        let mut aug = RatMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(MatrixError::Singular);
        }
        let mut inv = RatMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = red.at(r, n + c).clone();
            }
        }
        Ok(inv)
    }

    /// Canonical basis of the row space: the nonzero rows of the reduced
    /// echelon form. Two matrices span the same row space iff these agree.
    pub fn row_space_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }

    /// Stacks `other` below `self` (column counts must agree).
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "vstack requires equal column counts");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix addition requires equal shapes"
        );
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix subtraction requires equal shapes"
        );
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.at(r, k).is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.at(r, c).clone() + self.at(r, k) * rhs.at(k, c);
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| super::rational::format_rational(self.at(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
