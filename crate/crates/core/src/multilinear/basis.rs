//! Basis monomials for the three tensor factors of a mixed form.

use std::collections::BTreeMap;

/// Monomial `prod z_{index,column}^exp` in the Fock variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial(BTreeMap<(u8, u8), u32>);

impl FockMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: u8, column: u8) -> Self {
        let mut m = BTreeMap::new();
        m.insert((index, column), 1);
        FockMonomial(m)
    }

    pub fn from_exponents(entries: impl IntoIterator<Item = ((u8, u8), u32)>) -> Self {
        let mut out = Self::one();
        for (k, e) in entries {
            out.raise(k, e);
        }
        out
    }

    pub fn exponent(&self, index: u8, column: u8) -> u32 {
        self.0.get(&(index, column)).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u8, u8), u32)> + '_ {
        self.0.iter().map(|(k, e)| (*k, *e))
    }

    fn raise(&mut self, key: (u8, u8), by: u32) {
        if by > 0 {
            *self.0.entry(key).or_insert(0) += by;
        }
    }

    pub fn times(&self, other: &FockMonomial) -> FockMonomial {
        let mut out = self.clone();
        for (k, e) in other.entries() {
            out.raise(k, e);
        }
        out
    }

    pub fn times_var(&self, index: u8, column: u8) -> FockMonomial {
        let mut out = self.clone();
        out.raise((index, column), 1);
        out
    }

    /// `d/dz` of the monomial: the multiplicity and the lowered monomial.
    pub fn derivative(&self, index: u8, column: u8) -> Option<(u32, FockMonomial)> {
        let e = self.exponent(index, column);
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        if e == 1 {
            out.0.remove(&(index, column));
        } else {
            out.0.insert((index, column), e - 1);
        }
        Some((e, out))
    }
}

/// Generator `omega_{alpha mu}` of the exterior algebra.
pub type Omega = (u8, u8);

/// Wedge of distinct generators kept in strictly increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExteriorMonomial(Vec<Omega>);

impl ExteriorMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Sorts an arbitrary product of generators, returning the permutation
    /// sign, or `None` if a generator repeats.
    pub fn from_product(factors: &[Omega]) -> Option<(i32, ExteriorMonomial)> {
        let mut v = factors.to_vec();
        let mut sign = 1;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, ExteriorMonomial(v)))
    }

    pub fn generators(&self) -> &[Omega] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn wedge(&self, other: &ExteriorMonomial) -> Option<(i32, ExteriorMonomial)> {
        let mut all = self.0.clone();
        all.extend_from_slice(&other.0);
        Self::from_product(&all)
    }

    /// `omega ^ self`.
    pub fn wedge_left(&self, g: Omega) -> Option<(i32, ExteriorMonomial)> {
        match self.0.binary_search(&g) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, g);
                Some((if pos % 2 == 0 { 1 } else { -1 }, ExteriorMonomial(v)))
            }
        }
    }

    /// Interior product by the dual of `g`.
    pub fn interior(&self, g: Omega) -> Option<(i32, ExteriorMonomial)> {
        let pos = self.0.binary_search(&g).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some((if pos % 2 == 0 { 1 } else { -1 }, ExteriorMonomial(v)))
    }

    /// Replaces the generator at `pos` and re-sorts.
    pub fn replace(&self, pos: usize, g: Omega) -> Option<(i32, ExteriorMonomial)> {
        let mut v = self.0.clone();
        v[pos] = g;
        Self::from_product(&v)
    }
}

/// Word `e_{k1} (x) ... (x) e_{kl}` with 1-based letters.
pub type TensorWord = Vec<u8>;

/// One basis element of `F (x) Lambda (x) T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub fock: FockMonomial,
    pub ext: ExteriorMonomial,
    pub word: TensorWord,
}

impl Basis {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new(fock: FockMonomial, ext: ExteriorMonomial, word: TensorWord) -> Self {
        Basis { fock, ext, word }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign() {
        let (s, m) = ExteriorMonomial::from_product(&[(2, 3), (1, 3)]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.generators(), &[(1, 3), (2, 3)]);
        assert!(ExteriorMonomial::from_product(&[(1, 3), (1, 3)]).is_none());
    }

    #[test]
    fn interior_removes_with_position_sign() {
        let m = ExteriorMonomial::from_product(&[(1, 3), (2, 3)]).unwrap().1;
        let (s, r) = m.interior((1, 3)).unwrap();
        assert_eq!((s, r.generators()), (1, &[(2, 3)][..]));
        let (s, r) = m.interior((2, 3)).unwrap();
        assert_eq!((s, r.generators()), (-1, &[(1, 3)][..]));
    }

    #[test]
    fn derivative_lowers_exponent() {
        let m = FockMonomial::from_exponents([((1, 1), 3), ((2, 1), 1)]);
        let (k, d) = m.derivative(1, 1).unwrap();
        assert_eq!(k, 3);
        assert_eq!(d.exponent(1, 1), 2);
        assert!(m.derivative(3, 1).is_none());
    }
}
