//! Quaternion vectors and matrices.
//!
//! `H^N` is a right `H`-module with inner product `⟨x, y⟩ = Σ conj(x_m)·y_m`,
//! conjugate-linear in the first slot and right-linear in the second.

mod complex;
mod eigen;
mod gram_schmidt;
mod normal;

use std::ops::{Deref, DerefMut, Index, IndexMut};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

pub use complex::{complex_eigenvalues, CMatrix, ComplexLu};
pub use eigen::{complex_adjoint, right_eigen, standard_eigenvalues, EigenPair, TOL_EIG};
pub use gram_schmidt::{gram_schmidt, TOL_DEP};
pub use normal::{is_normal, normality_by_parts, real_parts};

/// Column vector in `H^N`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QVector(pub Vec<Quaternion>);

impl QVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![Quaternion::ZERO; n])
    }

    /// The `k`-th standard unit vector.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = Quaternion::ONE;
        v
    }

    /// `⟨self, other⟩ = Σ conj(self_m)·other_m`.
    pub fn inner(&self, other: &QVector) -> Result<Quaternion> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(self.iter().zip(other.iter()).map(|(a, b)| a.conj() * *b).sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Right scalar multiplication `v·a`.
    pub fn mul_right(&self, a: Quaternion) -> QVector {
        QVector(self.iter().map(|q| *q * a).collect())
    }

    pub fn scale(&self, s: f64) -> QVector {
        QVector(self.iter().map(|q| *q * s).collect())
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.iter().zip(other.iter()).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.iter().zip(other.iter()).map(|(a, b)| *a - *b).collect())
    }

    /// Largest entrywise distance.
    pub fn max_diff(&self, other: &QVector) -> f64 {
        self.iter().zip(other.iter()).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }
}

impl Deref for QVector {
    type Target = Vec<Quaternion>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for QVector {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl From<Vec<Quaternion>> for QVector {
    fn from(v: Vec<Quaternion>) -> Self {
        Self(v)
    }
}

/// Dense row-major quaternion matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        if let Some(bad) = cols.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch { expected: rows, found: bad.len() });
        }
        Ok(Self::from_fn(rows, cols.len(), |r, c| cols[c][r]))
    }

    /// Tridiagonal matrix with the given diagonal and (symmetric) off-diagonal.
    pub fn tridiagonal(diag: &[Quaternion], off: &[Quaternion]) -> Result<Self> {
        let n = diag.len();
        if off.len() + 1 != n.max(1) {
            return Err(Error::DimensionMismatch { expected: n.saturating_sub(1), found: off.len() });
        }
        Ok(Self::from_fn(n, n, |r, c| {
            if r == c {
                diag[r]
            } else if r + 1 == c {
                off[r]
            } else if c + 1 == r {
                off[c]
            } else {
                Quaternion::ZERO
            }
        }))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::DimensionMismatch { expected: self.rows, found: self.cols })
        }
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector((0..self.rows).map(|r| self[(r, c)]).collect())
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> QMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Plain transpose without conjugation.
    pub fn transpose(&self) -> QMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| (0..self.cols).map(|m| self[(r, m)] * other[(m, c)]).sum()))
    }

    pub fn mul_vec(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(QVector((0..self.rows).map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum()).collect()))
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect(),
        })
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − Aᵀ‖_F`.
    pub fn asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += (self[(r, c)] - self[(c, r)]).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.cols + c]
    }
}
