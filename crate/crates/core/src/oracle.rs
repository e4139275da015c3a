//! Second route to the degree-two invariants through the free 2-step
//! nilpotent group `F/Gamma_3 F (x) Q`.
//!
//! Elements are pairs `(v, w)` with `v` in `Q^n` and `w` in `Lambda^2 Q^n`,
//! multiplied by the truncated Baker-Campbell-Hausdorff formula
//! `(v,w)(v',w') = (v+v', w+w'+ v^v'/2)`. Nothing here touches the Magnus
//! series; only the generic linear algebra is shared with the main pipeline.

use crate::linalg::{pair_count, wedge, Matrix};
use crate::presentation::{Presentation, Word};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct BchElement<S> {
    pub v: Vec<S>,
    /// Lexicographic `e_i ^ e_j` coordinates.
    pub w: Vec<S>,
}

impl<S: Scalar> BchElement<S> {
    pub fn identity(n: usize) -> Self {
        BchElement {
            v: vec![S::zero(); n],
            w: vec![S::zero(); pair_count(n)],
        }
    }

    pub fn generator(i: usize, n: usize) -> Self {
        let mut g = Self::identity(n);
        g.v[i] = S::one();
        g
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cross = wedge(&self.v, &other.v);
        BchElement {
            v: self
                .v
                .iter()
                .zip(&other.v)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            w: self
                .w
                .iter()
                .zip(&other.w)
                .zip(cross)
                .map(|((a, b), c)| a.clone() + b.clone() + c * S::half())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        BchElement {
            v: self.v.iter().map(|x| -x.clone()).collect(),
            w: self.w.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// `(v, w)^m = (m v, m w)`, since `v ^ v = 0`.
    pub fn pow(&self, m: &S) -> Self {
        BchElement {
            v: self.v.iter().map(|x| x.clone() * m.clone()).collect(),
            w: self.w.iter().map(|x| x.clone() * m.clone()).collect(),
        }
    }
}

pub fn bch_evaluate<S: Scalar>(word: &Word, n: usize) -> BchElement<S> {
    word.letters()
        .iter()
        .fold(BchElement::identity(n), |acc, l| {
            acc.mul(&BchElement::generator(l.gen, n).pow(&S::from_bigint(&l.exp)))
        })
}

/// `(q, dim Gamma_2/Gamma_3 (x) Q)` from BCH data alone.
pub fn oracle_dims<S: Scalar>(p: &Presentation) -> (usize, usize) {
    let n = p.n();
    let images: Vec<BchElement<S>> = p.relators().iter().map(|r| bch_evaluate(r, n)).collect();
    let v_rows = Matrix::from_rows(n, images.iter().map(|e| e.v.clone()).collect())
        .expect("evaluations share n");
    let q = n - v_rows.rank();

    let mut rows: Vec<Vec<S>> = Vec::new();
    for e in &images {
        for j in 0..n {
            rows.push(wedge(&e.v, &BchElement::<S>::generator(j, n).v));
        }
    }
    let kernel = v_rows.transpose().nullspace();
    for lambda in kernel.column_vecs() {
        let mut w = vec![S::zero(); pair_count(n)];
        for (e, c) in images.iter().zip(&lambda) {
            for (acc, x) in w.iter_mut().zip(&e.w) {
                *acc = acc.clone() + c.clone() * x.clone();
            }
        }
        rows.push(w);
    }
    let span = Matrix::from_rows(pair_count(n), rows).expect("rows in Lambda^2 Q^n");
    (q, pair_count(n) - span.rank())
}

pub fn oracle_gamma23_dim(p: &Presentation) -> usize {
    oracle_dims::<crate::Q>(p).1
}
