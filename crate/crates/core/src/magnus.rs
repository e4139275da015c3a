//! Degree-two truncation of the Magnus expansion `x_i -> 1 + X_i`.
//!
//! A [`TruncatedSeries`] stores the linear and quadratic parts of a series
//! with its constant term kept separately by the caller; for a group
//! element `w` the stored value is the truncation of `w - 1`.

use std::fmt;

use num_bigint::BigInt;

use crate::linalg::{pairs, LinalgError, Matrix};
use crate::presentation::Word;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    /// Coefficient of `X_i`.
    pub linear: Vec<S>,
    /// Entry `(i, j)` is the coefficient of `X_i X_j`.
    pub quadratic: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let linear: Vec<String> = self.linear.iter().map(|x| x.to_string()).collect();
        f.debug_struct("TruncatedSeries")
            .field("linear", &linear)
            .field("quadratic", &self.quadratic)
            .finish()
    }
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(n: usize) -> Self {
        TruncatedSeries {
            linear: vec![S::zero(); n],
            quadratic: Matrix::zeros(n, n),
        }
    }

    /// The series `X_i`.
    pub fn variable(i: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.linear[i] = S::one();
        s
    }

    pub fn n(&self) -> usize {
        self.linear.len()
    }

    pub fn is_zero(&self) -> bool {
        self.linear.iter().all(|x| x.is_zero()) && self.quadratic.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        check_dims(self, other)?;
        let mut out = self.clone();
        for (a, b) in out.linear.iter_mut().zip(&other.linear) {
            *a = a.clone() + b.clone();
        }
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.quadratic[(i, j)] =
                    out.quadratic[(i, j)].clone() + other.quadratic[(i, j)].clone();
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let n = self.n();
        let mut out = self.clone();
        for a in &mut out.linear {
            *a = a.clone() * c.clone();
        }
        for i in 0..n {
            for j in 0..n {
                out.quadratic[(i, j)] = out.quadratic[(i, j)].clone() * c.clone();
            }
        }
        out
    }

    /// `sum_{i<j} (q_ij - q_ji) e_i ^ e_j`, in lexicographic coordinates.
    pub fn antisymmetrized_quadratic(&self) -> Vec<S> {
        pairs(self.n())
            .map(|(i, j)| self.quadratic[(i, j)].clone() - self.quadratic[(j, i)].clone())
            .collect()
    }

    pub fn quadratic_is_antisymmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.quadratic[(i, j)] == -self.quadratic[(j, i)].clone()))
    }
}

fn check_dims<S: Scalar>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
) -> Result<(), LinalgError> {
    if a.n() != b.n() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(())
}

/// Degree-two part of `(a0 + a)(b0 + b) - a0 b0`.
pub fn truncated_mul<S: Scalar>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
    a0: &S,
    b0: &S,
) -> Result<TruncatedSeries<S>, LinalgError> {
    check_dims(a, b)?;
    let n = a.n();
    let mut out = TruncatedSeries::zero(n);
    for i in 0..n {
        out.linear[i] = a0.clone() * b.linear[i].clone() + b0.clone() * a.linear[i].clone();
    }
    for i in 0..n {
        for j in 0..n {
            out.quadratic[(i, j)] = a0.clone() * b.quadratic[(i, j)].clone()
                + b0.clone() * a.quadratic[(i, j)].clone()
                + a.linear[i].clone() * b.linear[j].clone();
        }
    }
    Ok(out)
}

/// Product of two group-like series `(1 + a)(1 + b) - 1`.
pub fn group_mul<S: Scalar>(
    a: &TruncatedSeries<S>,
    b: &TruncatedSeries<S>,
) -> Result<TruncatedSeries<S>, LinalgError> {
    truncated_mul(a, b, &S::one(), &S::one())
}

/// `(1 + X_i)^m - 1` truncated: `m X_i + C(m,2) X_i^2`, any integer `m`.
pub fn generator_power<S: Scalar>(i: usize, m: &BigInt, n: usize) -> TruncatedSeries<S> {
    let mut s = TruncatedSeries::zero(n);
    let mm = S::from_bigint(m);
    s.quadratic[(i, i)] = mm.clone() * (mm.clone() - S::one()) * S::half();
    s.linear[i] = mm;
    s
}

/// Image of `w - 1` modulo degree three.
pub fn magnus_epsilon<S: Scalar>(w: &Word, n: usize) -> TruncatedSeries<S> {
    let mut acc = TruncatedSeries::<S>::zero(n);
    // Right factor has a single nonzero linear entry, so the outer product
    // only touches one column.
    for l in w.letters() {
        let m = S::from_bigint(&l.exp);
        let g = l.gen;
        for r in 0..n {
            if !acc.linear[r].is_zero() {
                acc.quadratic[(r, g)] =
                    acc.quadratic[(r, g)].clone() + acc.linear[r].clone() * m.clone();
            }
        }
        acc.quadratic[(g, g)] =
            acc.quadratic[(g, g)].clone() + m.clone() * (m.clone() - S::one()) * S::half();
        acc.linear[g] = acc.linear[g].clone() + m;
    }
    acc
}
