//! Mixed forms in `Pol(C^{m x n}) (x) Lambda(p*) (x) T(V)` and the primitive
//! operators acting on them.

mod basis;
mod form;
mod ops;

pub use basis::{Basis, ExteriorMonomial, FockMonomial, Omega, TensorWord};
pub use form::MixedForm;
pub use ops::*;

use serde::Serialize;

use crate::error::{Error, Result};

/// Signature `(p, q)` of `V` together with the genus `n`.
///
/// Basis indices are 1-based: `1..=p` are positive, `p+1..=p+q` negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpaceParams {
    pub p: usize,
    pub q: usize,
    pub n: usize,
}

impl SpaceParams {
    pub fn new(p: usize, q: usize, n: usize) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(Error::InvalidInput(format!("need p >= 1 and n >= 1, got p={p}, n={n}")));
        }
        if p + q > 32 || n > 16 {
            return Err(Error::InvalidInput(format!("dimensions too large: p+q={}, n={n}", p + q)));
        }
        Ok(SpaceParams { p, q, n })
    }

    pub fn m(&self) -> usize {
        self.p + self.q
    }

    /// `(e_k, e_k)`: `+1` for positive indices, `-1` for negative ones.
    pub fn eps(&self, k: u8) -> i64 {
        if (k as usize) <= self.p {
            1
        } else {
            -1
        }
    }

    pub fn positive(&self) -> impl Iterator<Item = u8> + Clone {
        1..=self.p as u8
    }

    pub fn negative(&self) -> impl Iterator<Item = u8> + Clone {
        (self.p as u8 + 1)..=(self.m() as u8)
    }

    pub fn all(&self) -> impl Iterator<Item = u8> + Clone {
        1..=self.m() as u8
    }

    pub fn columns(&self) -> impl Iterator<Item = u8> + Clone {
        1..=self.n as u8
    }

    /// All generators `omega_{alpha mu}` in lexicographic order.
    pub fn omegas(&self) -> Vec<Omega> {
        let mut v = Vec::new();
        for a in self.positive() {
            for mu in self.negative() {
                v.push((a, mu));
            }
        }
        v
    }
}
