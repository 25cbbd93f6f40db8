use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::{json, Value};

use super::basis::{Basis, ExteriorMonomial, FockMonomial, TensorWord};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite sum of basis terms with exact scalar coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MixedForm {
    terms: BTreeMap<Basis, Scalar>,
}

impl MixedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `1 (x) 1 (x) 1`.
    pub fn unit() -> Self {
        Self::term(Basis::unit(), Scalar::one())
    }

    pub fn term(b: Basis, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &Basis) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, b: Basis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MixedForm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &MixedForm) {
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> MixedForm {
        let mut out = MixedForm::zero();
        out.add_scaled(self, c);
        out
    }

    /// Product: Fock monomials multiply, exterior parts wedge, words concatenate.
    pub fn mul(&self, other: &MixedForm) -> MixedForm {
        let mut out = MixedForm::zero();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                let Some((sign, ext)) = b1.ext.wedge(&b2.ext) else {
                    continue;
                };
                let mut word = b1.word.clone();
                word.extend_from_slice(&b2.word);
                let c = c1 * c2;
                let c = if sign < 0 { -c } else { c };
                out.add_term(Basis::new(b1.fock.times(&b2.fock), ext, word), c);
            }
        }
        out
    }

    pub fn map_terms(&self, f: impl Fn(&Basis) -> MixedForm) -> MixedForm {
        let mut out = MixedForm::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Every word length occurring in the tensor slot.
    pub fn word_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|b| b.word.len()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Groups terms by their Fock and exterior parts.
    pub fn by_tensor_slot(&self) -> BTreeMap<(FockMonomial, ExteriorMonomial), BTreeMap<TensorWord, Scalar>> {
        let mut out: BTreeMap<_, BTreeMap<_, _>> = BTreeMap::new();
        for (b, c) in &self.terms {
            out.entry((b.fock.clone(), b.ext.clone()))
                .or_default()
                .insert(b.word.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(b, c)| term_json(b, c)).collect())
    }

    /// The first `k` terms, used in failure diagnostics.
    pub fn head_json(&self, k: usize) -> Value {
        Value::Array(self.terms.iter().take(k).map(|(b, c)| term_json(b, c)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("mixed form: {m}"));
        let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
        let mut out = MixedForm::zero();
        for t in arr {
            let small = |x: &Value| x.as_u64().and_then(|n| u8::try_from(n).ok());
            let mut fock = Vec::new();
            for e in t["z"].as_array().ok_or_else(|| bad("z"))? {
                let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| bad("z entry"))?;
                let i = small(&e[0]).ok_or_else(|| bad("z index"))?;
                let j = small(&e[1]).ok_or_else(|| bad("z column"))?;
                let k = e[2].as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| bad("z exponent"))?;
                fock.push(((i, j), k));
            }
            let mut gens = Vec::new();
            for g in t["w"].as_array().ok_or_else(|| bad("w"))? {
                let g = g.as_array().filter(|g| g.len() == 2).ok_or_else(|| bad("w entry"))?;
                gens.push((small(&g[0]).ok_or_else(|| bad("w"))?, small(&g[1]).ok_or_else(|| bad("w"))?));
            }
            let word = t["t"]
                .as_array()
                .ok_or_else(|| bad("t"))?
                .iter()
                .map(|x| small(x).ok_or_else(|| bad("t letter")))
                .collect::<Result<Vec<u8>>>()?;
            let Some((sign, ext)) = ExteriorMonomial::from_product(&gens) else {
                continue;
            };
            let c = Scalar::from_json(&t["c"])?;
            let c = if sign < 0 { -c } else { c };
            out.add_term(Basis::new(FockMonomial::from_exponents(fock), ext, word), c);
        }
        Ok(out)
    }
}

fn term_json(b: &Basis, c: &Scalar) -> Value {
    let z: Vec<Value> = b.fock.entries().map(|((i, j), e)| json!([i, j, e])).collect();
    let w: Vec<Value> = b.ext.generators().iter().map(|(a, m)| json!([a, m])).collect();
    json!({ "z": z, "w": w, "t": b.word, "c": c.to_json() })
}

impl<'a> Add<&'a MixedForm> for &'a MixedForm {
    type Output = MixedForm;
    fn add(self, rhs: &MixedForm) -> MixedForm {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a> Sub<&'a MixedForm> for &'a MixedForm {
    type Output = MixedForm;
    fn sub(self, rhs: &MixedForm) -> MixedForm {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Add for MixedForm {
    type Output = MixedForm;
    fn add(self, rhs: MixedForm) -> MixedForm {
        &self + &rhs
    }
}

impl Sub for MixedForm {
    type Output = MixedForm;
    fn sub(self, rhs: MixedForm) -> MixedForm {
        &self - &rhs
    }
}

impl Neg for &MixedForm {
    type Output = MixedForm;
    fn neg(self) -> MixedForm {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for MixedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for ((i, j), e) in b.fock.entries() {
                write!(f, " z{i}_{j}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            for (a, m) in b.ext.generators() {
                write!(f, " w{a}{m}")?;
            }
            if !b.word.is_empty() {
                write!(f, " e{:?}", b.word)?;
            }
        }
        Ok(())
    }
}
