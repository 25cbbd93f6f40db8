//! Exact rational matrices stored row-sparse.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Sparse vector indexed by position.
pub type QVector = BTreeMap<usize, Rational>;

pub fn vec_add_scaled(acc: &mut QVector, x: &QVector, c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (i, v) in x {
        let slot = acc.entry(*i).or_insert_with(Rational::zero);
        *slot += v * c;
        if slot.is_zero() {
            acc.remove(i);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QVector>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![QVector::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.data[*i].insert(j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                t.data[*j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = QVector::new();
            for (k, v) in r {
                vec_add_scaled(&mut acc, &other.data[*k], v);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        let mut out = self.clone();
        for (i, r) in other.data.iter().enumerate() {
            vec_add_scaled(&mut out.data[i], r, &-Rational::one());
        }
        out
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        let mut out = QVector::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut s = Rational::zero();
            for (j, v) in r {
                if let Some(xj) = x.get(j) {
                    s += v * xj;
                }
            }
            if !s.is_zero() {
                out.insert(i, s);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.data.clone())
    }
}

/// Rank of the span of the given sparse rows.
pub fn rank_of_rows(rows: Vec<QVector>) -> usize {
    // pivot column -> reduced row with leading entry 1 in that column
    let mut pivots: BTreeMap<usize, QVector> = BTreeMap::new();
    for mut r in rows {
        while let Some((&lead, lv)) = r.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let c = -lv.clone();
                    vec_add_scaled(&mut r, p, &c);
                }
                None => {
                    let inv = Rational::one() / lv.clone();
                    let normalized = r.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Solver for square systems `M u = b` that may be singular but consistent.
///
/// Stores `T` with `T M = R` in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Solver {
    n: usize,
    transform: Vec<QVector>,
    pivot_cols: Vec<usize>,
}

impl Solver {
    pub fn new(m: &QMatrix) -> Self {
        let n = m.rows();
        let mut r: Vec<QVector> = m.data.clone();
        let mut t: Vec<QVector> = (0..n).map(|i| QVector::from([(i, Rational::one())])).collect();
        let mut pivot_cols = Vec::new();
        let mut next = 0;
        for col in 0..m.cols() {
            let Some(piv) = (next..n).find(|&i| r[i].contains_key(&col)) else {
                continue;
            };
            r.swap(next, piv);
            t.swap(next, piv);
            let inv = Rational::one() / r[next][&col].clone();
            for v in r[next].values_mut() {
                *v *= &inv;
            }
            for v in t[next].values_mut() {
                *v *= &inv;
            }
            let (prow, trow) = (r[next].clone(), t[next].clone());
            for i in 0..n {
                if i == next {
                    continue;
                }
                if let Some(c) = r[i].get(&col).cloned() {
                    vec_add_scaled(&mut r[i], &prow, &-c.clone());
                    vec_add_scaled(&mut t[i], &trow, &-c);
                }
            }
            pivot_cols.push(col);
            next += 1;
            if next == n {
                break;
            }
        }
        Solver { n, transform: t, pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Some solution with free variables set to zero.
    pub fn solve(&self, b: &QVector) -> Result<QVector> {
        let mut u = QVector::new();
        for (row, t) in self.transform.iter().enumerate() {
            let mut y = Rational::zero();
            for (k, v) in t {
                if let Some(bk) = b.get(k) {
                    y += v * bk;
                }
            }
            if row < self.pivot_cols.len() {
                if !y.is_zero() {
                    u.insert(self.pivot_cols[row], y);
                }
            } else if !y.is_zero() {
                return Err(Error::Degenerate(format!("inconsistent linear system of size {}", self.n)));
            }
        }
        Ok(u)
    }
}
