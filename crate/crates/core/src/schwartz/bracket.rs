//! Harmonic Schur projection on the tensor slot, the forms `phi_{nq,[lambda]}`,
//! the map `sigma` and the column substitution `x -> x a`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::forms::Forms;
use crate::error::{Error, Result};
use crate::linalg::QVector;
use crate::multilinear::{Basis, ExteriorMonomial, FockMonomial, MixedForm, SpaceParams};
use crate::scalar::{Rational, Scalar};
use crate::schur::{
    filling_word, harmonic_schur_projector, index_word, schur_projector, semistandard_fillings, Filling, Partition,
    ProjectorMatrix,
};

/// `(1 (x) 1 (x) P) x` for a projector `P` on `T^l(V)`; every term must have tensor length `l`.
pub fn project_tensor_slot(x: &MixedForm, proj: &ProjectorMatrix) -> Result<MixedForm> {
    let mut cache: BTreeMap<Vec<u8>, QVector> = BTreeMap::new();
    let mut out = MixedForm::zero();
    for (b, c) in x.terms() {
        if b.word.len() != proj.ell {
            return Err(Error::InvalidInput(format!(
                "tensor slot of length {} does not match projector degree {}",
                b.word.len(),
                proj.ell
            )));
        }
        let col = cache.entry(b.word.clone()).or_insert_with(|| proj.column(&b.word));
        for (i, v) in col.iter() {
            let word = index_word(*i, proj.dim, proj.ell);
            out.add_term(Basis::new(b.fock.clone(), b.ext.clone(), word), c.scale(v));
        }
    }
    Ok(out)
}

/// `pi_lambda eps_{f(lambda)}` as a combination of input words in `T^l(C^n)`.
pub fn schur_input(shape: &Partition, f: &Filling, n: usize) -> Result<Vec<(Vec<u8>, Rational)>> {
    let pi = schur_projector(shape, n)?;
    let col = pi.column(&filling_word(f));
    Ok(col.into_iter().map(|(i, v)| (index_word(i, n, shape.size()), v)).collect())
}

impl Forms {
    /// `phi_{nq,[lambda]}(pi_lambda eps_f) = (1 (x) 1 (x) pi_[lambda]) phi_{nq,l}(pi_lambda eps_f)`
    /// for every `f` in `SS(lambda, n)`.
    pub fn phi_bracket(&self, shape: &Partition) -> Result<Vec<(Filling, MixedForm)>> {
        let n = self.params.n;
        if shape.length() > n || n > self.params.p {
            return Err(Error::Precondition(format!(
                "need i(lambda) <= n <= p, got i(lambda) = {}, n = {n}, p = {}",
                shape.length(),
                self.params.p
            )));
        }
        let proj = harmonic_schur_projector(shape, &self.params)?;
        semistandard_fillings(shape, n)
            .into_iter()
            .map(|f| {
                let input = schur_input(shape, &f, n)?;
                let x = project_tensor_slot(&self.phi_on(&input)?, &proj)?;
                Ok((f, x))
            })
            .collect()
    }
}

/// `sigma_l(u_1 (x) ... (x) u_l) = prod_s sum_i u_s[i] sum_k z_{k,i} (x) 1 (x) e_k`
/// for vectors `u_s` in `Q^n`.
pub fn sigma_word(params: &SpaceParams, vectors: &[Vec<Rational>]) -> Result<MixedForm> {
    let mut out = MixedForm::unit();
    for u in vectors {
        if u.len() != params.n {
            return Err(Error::InvalidInput(format!("sigma input of length {} for n = {}", u.len(), params.n)));
        }
        let mut factor = MixedForm::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for k in params.all() {
                let b = Basis::new(FockMonomial::var(k, i as u8 + 1), ExteriorMonomial::one(), vec![k]);
                factor.add_term(b, Scalar::from_rational(ui.clone()));
            }
        }
        out = out.mul(&factor);
    }
    Ok(out)
}

/// Substitutes `z_{k,i} -> sum_j a[j][i] z_{k,j}`, i.e. evaluates at `x a`.
pub fn substitute_columns(x: &MixedForm, a: &[Vec<Rational>]) -> MixedForm {
    let mut cache: BTreeMap<(u8, u8), MixedForm> = BTreeMap::new();
    let mut image = |k: u8, i: u8| -> MixedForm {
        cache
            .entry((k, i))
            .or_insert_with(|| {
                let mut f = MixedForm::zero();
                for (j, row) in a.iter().enumerate() {
                    let c = &row[i as usize - 1];
                    if !c.is_zero() {
                        f.add_term(
                            Basis::new(FockMonomial::var(k, j as u8 + 1), ExteriorMonomial::one(), vec![]),
                            Scalar::from_rational(c.clone()),
                        );
                    }
                }
                f
            })
            .clone()
    };
    let mut out = MixedForm::zero();
    for (b, c) in x.terms() {
        let mut t = MixedForm::term(Basis::new(FockMonomial::one(), b.ext.clone(), b.word.clone()), c.clone());
        for ((k, i), e) in b.fock.entries() {
            let lin = image(k, i);
            for _ in 0..e {
                t = lin.mul(&t);
            }
        }
        out.add_assign(&t);
    }
    out
}
