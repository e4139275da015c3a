//! Exact dense linear algebra over a [`Scalar`] field.
//!
//! Elimination always picks the leftmost nonzero column and the first
//! eligible row, so every derived basis (null spaces, quotient bases,
//! row spaces) is a deterministic function of the input matrix.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::scalar::{is_zero, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is needed so that a matrix
    /// with no rows still knows its width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| S::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !is_zero(b) {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form by exact Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = S::one() / m[(rank, col)].clone();
            for c in col..m.cols {
                m[(rank, c)] = m[(rank, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == rank || is_zero(&m[(r, col)]) {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let sub = factor.clone() * m[(rank, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - sub;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            reduced: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : M v = 0}`, returned as the columns of a
    /// `cols x (cols - rank)` matrix.
    pub fn nullspace(&self) -> Matrix<S> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let free = free_columns(self.cols, &pivots);
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -reduced[(r, f)].clone();
            }
        }
        basis
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix<S> {
        let Rref { reduced, rank, .. } = self.rref();
        Matrix {
            rows: rank,
            cols: self.cols,
            data: reduced.data[..rank * self.cols].to_vec(),
        }
    }

    /// Row-space membership test.
    pub fn row_space_contains(&self, v: &[S]) -> Result<bool, LinalgError> {
        let extra = Matrix::from_rows(self.cols, vec![v.to_vec()])?;
        Ok(self.vstack(&extra)?.rank() == self.rank())
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq)]
pub struct Rref<S> {
    pub reduced: Matrix<S>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> fmt::Debug for Rref<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rref")
            .field("reduced", &self.reduced)
            .field("rank", &self.rank)
            .field("pivots", &self.pivots)
            .finish()
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !is_zero(*x) && !is_zero(*y))
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// A chosen basis of `S^ambient / rowspace(relations)`.
///
/// The basis consists of the images of the standard vectors at the non-pivot
/// columns of the relation RREF; `coords` maps an ambient vector to its
/// coordinates in that basis.
#[derive(Clone, PartialEq)]
pub struct QuotientBasis<S> {
    pub ambient_dim: usize,
    pub pivots: Vec<usize>,
    pub basis_columns: Vec<usize>,
    /// `dim x ambient_dim` coordinate map.
    pub coords: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for QuotientBasis<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientBasis")
            .field("ambient_dim", &self.ambient_dim)
            .field("pivots", &self.pivots)
            .field("basis_columns", &self.basis_columns)
            .field("coords", &self.coords)
            .finish()
    }
}

impl<S: Scalar> QuotientBasis<S> {
    pub fn dim(&self) -> usize {
        self.basis_columns.len()
    }

    pub fn coordinates(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        self.coords.mul_vec(v)
    }
}

pub fn quotient_basis<S: Scalar>(
    relations: &Matrix<S>,
    ambient_dim: usize,
) -> Result<QuotientBasis<S>, LinalgError> {
    if relations.cols() != ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            expected: ambient_dim,
            found: relations.cols(),
        });
    }
    let Rref {
        reduced, pivots, ..
    } = relations.rref();
    let basis_columns = free_columns(ambient_dim, &pivots);
    let mut coords = Matrix::zeros(basis_columns.len(), ambient_dim);
    // Row r of the RREF reads e_p + sum_f R[r][f] e_f = 0 in the quotient.
    for (k, &f) in basis_columns.iter().enumerate() {
        coords[(k, f)] = S::one();
        for (r, &p) in pivots.iter().enumerate() {
            coords[(k, p)] = -reduced[(r, f)].clone();
        }
    }
    Ok(QuotientBasis {
        ambient_dim,
        pivots,
        basis_columns,
        coords,
    })
}

/// Number of basis vectors `e_i ^ e_j` (i < j) of the second exterior power.
pub fn pair_count(q: usize) -> usize {
    q * q.saturating_sub(1) / 2
}

/// Lexicographic position of `e_i ^ e_j`, `i < j < q`.
pub fn pair_index(i: usize, j: usize, q: usize) -> usize {
    debug_assert!(i < j && j < q);
    i * (2 * q - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < q` in lexicographic order.
pub fn pairs(q: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..q).flat_map(move |i| (i + 1..q).map(move |j| (i, j)))
}

/// The antisymmetric `q x q` matrix of a two-vector.
pub fn antisymmetric_from_wedge<S: Scalar>(
    coeffs: &[S],
    q: usize,
) -> Result<Matrix<S>, LinalgError> {
    if coeffs.len() != pair_count(q) {
        return Err(LinalgError::DimensionMismatch {
            expected: pair_count(q),
            found: coeffs.len(),
        });
    }
    let mut m = Matrix::zeros(q, q);
    for ((i, j), c) in pairs(q).zip(coeffs) {
        m[(i, j)] = c.clone();
        m[(j, i)] = -c.clone();
    }
    Ok(m)
}

/// Reads a square matrix `A` as the two-vector `sum_{i<j} A_ij e_i ^ e_j`.
/// Only the strict upper triangle is used.
pub fn wedge_from_upper<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    pairs(m.rows()).map(|(i, j)| m[(i, j)].clone()).collect()
}

/// `u ^ v` in lexicographic coordinates.
pub fn wedge<S: Scalar>(u: &[S], v: &[S]) -> Vec<S> {
    let q = u.len();
    pairs(q)
        .map(|(i, j)| u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone())
        .collect()
}

/// Applies `Lambda^2` of the linear map `coords: S^n -> S^q` to a
/// two-vector given in lexicographic coordinates of `Lambda^2 S^n`.
pub fn push_forward_wedge<S: Scalar>(
    coords: &Matrix<S>,
    coeffs: &[S],
) -> Result<Vec<S>, LinalgError> {
    let n = coords.cols();
    let a = antisymmetric_from_wedge(coeffs, n)?;
    let pushed = coords.mul(&a)?.mul(&coords.transpose())?;
    Ok(wedge_from_upper(&pushed))
}

/// Rank of the alternating form attached to a two-vector on `S^q`.
pub fn alternating_rank<S: Scalar>(coeffs: &[S], q: usize) -> Result<usize, LinalgError> {
    Ok(antisymmetric_from_wedge(coeffs, q)?.rank())
}
