//! Permutations, the group algebra `Q[S_l]` and Young symmetrizers.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::partition::{Filling, StandardFilling};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// Permutation of `0..l`: `perm[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(l: usize) -> Self {
        Perm((0..l).collect())
    }

    /// Transposition of two 0-based points.
    pub fn transposition(l: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..l).collect();
        v.swap(a, b);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut sign = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Moves the letter in slot `i` to slot `self(i)`.
    pub fn act<T: Clone>(&self, word: &[T]) -> Vec<T> {
        let mut out = word.to_vec();
        for (i, x) in word.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// All permutations of `0..l` in lexicographic order.
    pub fn all(l: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..l).collect();
        loop {
            out.push(Perm(v.clone()));
            let Some(i) = (0..l.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
                break;
            };
            let j = (i + 1..l).rev().find(|&j| v[j] > v[i]).unwrap();
            v.swap(i, j);
            v[i + 1..].reverse();
        }
        out
    }
}

/// Element of the group algebra `Q[S_l]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    degree: usize,
    coeffs: BTreeMap<Perm, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement { degree, coeffs: BTreeMap::new() }
    }

    pub fn basis(p: Perm) -> Self {
        let degree = p.degree();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(p, Rational::one());
        GroupAlgebraElement { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, p: &Perm) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, p: Perm, c: Rational) {
        let slot = self.coeffs.entry(p.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, v) in &self.coeffs {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    /// Convolution product, compatible with the action: `(ab).w = a.(b.w)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree);
        for (g, a) in &self.coeffs {
            for (h, b) in &other.coeffs {
                out.add_term(g.compose(h), a * b);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Permutations preserving each of the given blocks of 0-based points.
fn block_group(l: usize, blocks: &[Vec<usize>]) -> Vec<Perm> {
    let mut out = vec![Perm::identity(l)];
    for block in blocks {
        let mut next = Vec::new();
        for sub in Perm::all(block.len()) {
            let mut p = Perm::identity(l);
            for (i, &src) in block.iter().enumerate() {
                p.0[src] = block[sub.0[i]];
            }
            for q in &out {
                next.push(p.compose(q));
            }
        }
        out = next;
    }
    out
}

/// Row group `P_t` and column group `Q_t` of a standard filling, acting on slots `label - 1`.
pub fn row_column_groups(t: &Filling) -> (Vec<Perm>, Vec<Perm>) {
    let l = t.shape().size();
    let rows: Vec<Vec<usize>> = t.rows().iter().map(|r| r.iter().map(|&x| x as usize - 1).collect()).collect();
    let conj = t.shape().conjugate();
    let cols: Vec<Vec<usize>> = conj
        .parts()
        .iter()
        .enumerate()
        .map(|(c, &h)| (0..h).map(|r| t.entry(r, c) as usize - 1).collect())
        .collect();
    (block_group(l, &rows), block_group(l, &cols))
}

/// Young symmetrizer `s_t = c3 * c_t * r_t` with `r_t = (1/|P|) sum p`,
/// `c_t = (1/|Q|) sum sgn(q) q`, and `c3` chosen so that `s_t` is idempotent.
pub fn young_symmetrizer(t: &StandardFilling) -> Result<GroupAlgebraElement> {
    if !t.is_standard() {
        return Err(Error::InvalidInput(format!("{t} is not a standard filling")));
    }
    let l = t.shape().size();
    let (rows, cols) = row_column_groups(t);
    let mut r = GroupAlgebraElement::zero(l);
    let pr = rat(1, rows.len() as i64);
    for p in rows {
        r.add_term(p, pr.clone());
    }
    let mut c = GroupAlgebraElement::zero(l);
    let qr = rat(1, cols.len() as i64);
    for q in cols {
        let s = q.sign();
        c.add_term(q, &qr * rat(s, 1));
    }
    let u = c.mul(&r);
    let u2 = u.mul(&u);
    let (g, ug) = u.terms().next().ok_or_else(|| Error::Degenerate("zero symmetrizer".into()))?;
    let kappa = u2.coeff(g) / ug.clone();
    if kappa.is_zero() || u2 != u.scale(&kappa) {
        return Err(Error::Degenerate(format!("no idempotent normalisation for {t}")));
    }
    Ok(u.scale(&(Rational::one() / kappa)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::partition::{canonical_filling, standard_fillings, Partition};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn action_moves_slot_i_to_image() {
        let swap = Perm(vec![1, 0]);
        assert_eq!(swap.act(&[1, 2]), [2, 1]);
        // 1 -> 2 -> 3 -> 1 sends e1 (x) e2 (x) e3 to e3 (x) e1 (x) e2
        let cycle = Perm(vec![1, 2, 0]);
        assert_eq!(cycle.act(&[1, 2, 3]), [3, 1, 2]);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let perms = Perm::all(3);
        let w = [1, 2, 3];
        for a in &perms {
            for b in &perms {
                assert_eq!(a.compose(b).act(&w), a.act(&b.act(&w)));
            }
        }
    }

    #[test]
    fn two_box_symmetrizers() {
        let s = young_symmetrizer(&canonical_filling(&p("2"))).unwrap();
        assert_eq!(s.coeff(&Perm(vec![0, 1])), rat(1, 2));
        assert_eq!(s.coeff(&Perm(vec![1, 0])), rat(1, 2));
        let a = young_symmetrizer(&canonical_filling(&p("1,1"))).unwrap();
        assert_eq!(a.coeff(&Perm(vec![0, 1])), rat(1, 2));
        assert_eq!(a.coeff(&Perm(vec![1, 0])), rat(-1, 2));
    }

    #[test]
    fn symmetrizers_are_idempotent() {
        for l in 1..=4 {
            for shape in Partition::all_of(l) {
                for t in standard_fillings(&shape) {
                    let s = young_symmetrizer(&t).unwrap();
                    assert_eq!(s.mul(&s), s, "{t}");
                }
            }
        }
    }

    #[test]
    fn signs_and_count() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm(vec![1, 2, 0]).sign(), 1);
        assert_eq!(Perm::transposition(3, 0, 2).sign(), -1);
    }
}
