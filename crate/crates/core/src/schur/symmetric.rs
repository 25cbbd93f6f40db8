//! Harmonic projection restricted to symmetric tensors, for one-row shapes.
//!
//! On `Sym^l(V)` the harmonic complement is `sym(g^{-1} (x) Sym^{l-2})`, so
//! the linear system lives on `Sym^{l-2}` and stays small when `m^l` is large.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::group::Perm;
use super::partition::Filling;
use super::projector::{filling_word, word_index, QuadraticForm};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector, Solver};
use crate::scalar::{rat, Rational};

/// Symmetric tensor stored by its values on weakly increasing 1-based words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    pub m: usize,
    pub ell: usize,
    pub values: BTreeMap<Vec<u8>, Rational>,
}

/// Weakly increasing words of length `ell` in letters `1..=m`.
pub fn sorted_words(m: usize, ell: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ell);
    fn rec(m: u8, ell: usize, lo: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == ell {
            out.push(cur.clone());
            return;
        }
        for a in lo..=m {
            cur.push(a);
            rec(m, ell, a, cur, out);
            cur.pop();
        }
    }
    rec(m as u8, ell, 1, &mut cur, &mut out);
    out
}

fn sorted(mut w: Vec<u8>) -> Vec<u8> {
    w.sort_unstable();
    w
}

impl SymTensor {
    pub fn zero(m: usize, ell: usize) -> Self {
        SymTensor { m, ell, values: BTreeMap::new() }
    }

    pub fn value(&self, word: &[u8]) -> Rational {
        self.values.get(&sorted(word.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Symmetrization of `x_{a_1} (x) ... (x) x_{a_l}`.
    pub fn symmetrized_product(x: &[Vec<Rational>], word: &[u8]) -> Result<Self> {
        let m = x.first().map_or(0, Vec::len);
        if word.iter().any(|&a| a == 0 || a as usize > x.len()) || x.iter().any(|v| v.len() != m) {
            return Err(Error::InvalidInput("coefficient vectors do not match the word".into()));
        }
        let ell = word.len();
        let perms = Perm::all(ell);
        let norm = rat(1, perms.len() as i64);
        let mut out = SymTensor::zero(m, ell);
        for k in sorted_words(m, ell) {
            let mut s = Rational::zero();
            for p in &perms {
                let mut t = Rational::one();
                for (i, &a) in word.iter().enumerate() {
                    t *= &x[a as usize - 1][k[p.0[i]] as usize - 1];
                    if t.is_zero() {
                        break;
                    }
                }
                s += t;
            }
            if !s.is_zero() {
                out.values.insert(k, s * &norm);
            }
        }
        Ok(out)
    }

    /// Contraction of the first two slots with `gram`.
    pub fn contract(&self, gram: &[Vec<Rational>]) -> SymTensor {
        let mut out = SymTensor::zero(self.m, self.ell - 2);
        for r in sorted_words(self.m, self.ell - 2) {
            let mut s = Rational::zero();
            for (a, row) in gram.iter().enumerate() {
                for (b, g) in row.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    let mut w = r.clone();
                    w.push(a as u8 + 1);
                    w.push(b as u8 + 1);
                    s += g * self.value(&w);
                }
            }
            if !s.is_zero() {
                out.values.insert(r, s);
            }
        }
        out
    }

    /// `sym(ginv (x) self)`.
    pub fn expand(&self, ginv: &[Vec<Rational>]) -> SymTensor {
        let ell = self.ell + 2;
        let pairs = (ell * (ell - 1) / 2) as i64;
        let mut out = SymTensor::zero(self.m, ell);
        for k in sorted_words(self.m, ell) {
            let mut s = Rational::zero();
            for a in 0..ell {
                for b in a + 1..ell {
                    let g = &ginv[k[a] as usize - 1][k[b] as usize - 1];
                    if g.is_zero() {
                        continue;
                    }
                    let rest: Vec<u8> = k.iter().enumerate().filter(|&(i, _)| i != a && i != b).map(|(_, &c)| c).collect();
                    s += g * self.value(&rest);
                }
            }
            if !s.is_zero() {
                out.values.insert(k, s / rat(pairs, 1));
            }
        }
        out
    }

    pub fn sub(&self, other: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let slot = out.values.entry(k.clone()).or_insert_with(Rational::zero);
            *slot -= v;
            if slot.is_zero() {
                out.values.remove(k);
            }
        }
        out
    }

    /// Harmonic part with respect to `form`.
    pub fn harmonic_part(&self, form: &QuadraticForm) -> Result<SymTensor> {
        if self.ell < 2 {
            return Ok(self.clone());
        }
        let basis = sorted_words(self.m, self.ell - 2);
        let index: BTreeMap<&Vec<u8>, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let to_vec = |t: &SymTensor| -> QVector { t.values.iter().map(|(k, v)| (index[k], v.clone())).collect() };
        let cols: Vec<QVector> = basis
            .iter()
            .map(|w| {
                let mut u = SymTensor::zero(self.m, self.ell - 2);
                u.values.insert(w.clone(), Rational::one());
                to_vec(&u.expand(&form.inverse).contract(&form.gram))
            })
            .collect();
        let solver = Solver::new(&QMatrix::from_columns(basis.len(), &cols));
        let u = solver.solve(&to_vec(&self.contract(&form.gram)))?;
        let mut ut = SymTensor::zero(self.m, self.ell - 2);
        for (i, v) in u {
            ut.values.insert(basis[i].clone(), v);
        }
        Ok(self.sub(&ut.expand(&form.inverse)))
    }

    /// All `m^l` coordinates in the word basis.
    pub fn to_full(&self) -> QVector {
        let mut out = QVector::new();
        for (k, v) in &self.values {
            let mut seen = std::collections::BTreeSet::new();
            for p in Perm::all(self.ell) {
                let w = p.act(k);
                if seen.insert(w.clone()) {
                    out.insert(word_index(&w, self.m), v.clone());
                }
            }
        }
        out
    }
}

/// `pi_[lambda] x_{f(lambda)}` for a one-row shape, computed on `Sym^l`.
pub fn harmonic_word_symmetric(x: &[Vec<Rational>], f: &Filling, form: &QuadraticForm) -> Result<SymTensor> {
    if f.shape().length() > 1 {
        return Err(Error::Precondition(format!("shape {} has more than one row", f.shape())));
    }
    SymTensor::symmetrized_product(x, &filling_word(f))?.harmonic_part(form)
}
