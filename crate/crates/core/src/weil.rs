//! Fock model of the Weil representation with the scale `lambda = 2 pi i`.
//!
//! Operators act on the Fock factor only; the exterior and tensor factors are
//! carried along untouched.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multilinear::{z_del, z_mul, LinearOperator, SpaceParams};
use crate::scalar::{rat, Scalar};

/// `lambda = 2 pi i`.
pub fn lambda() -> Scalar {
    Scalar::from_parts(rat(2, 1), 1, 0, 1).unwrap()
}

/// `1 / lambda = -i / (2 pi)`.
pub fn lambda_inv() -> Scalar {
    Scalar::from_parts(rat(1, 2), 3, 0, -1).unwrap()
}

/// Basis elements of the Lie algebras acting on the Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieGenerator {
    /// `X_{alpha beta}` with both indices positive.
    OKk(u8, u8),
    /// `X_{mu nu}` with both indices negative.
    OKkNeg(u8, u8),
    /// `X_{alpha mu}` spanning the noncompact part of `o(V)`.
    OP(u8, u8),
    /// `w'_j o w''_k`.
    SpK(u8, u8),
    /// `w''_j o w''_k`.
    SpPPlus(u8, u8),
    /// `w'_j o w'_k`.
    SpPMinus(u8, u8),
    /// `L = (i/4) w'_1 o w'_1`; genus one only.
    Lowering,
}

fn zz(a: u8, ja: u8, b: u8, jb: u8) -> LinearOperator {
    z_mul(a, ja).compose(&z_mul(b, jb))
}

fn dd(a: u8, ja: u8, b: u8, jb: u8) -> LinearOperator {
    z_del(a, ja).compose(&z_del(b, jb))
}

fn zd(a: u8, ja: u8, b: u8, jb: u8) -> LinearOperator {
    z_mul(a, ja).compose(&z_del(b, jb))
}

fn check_pos(params: &SpaceParams, idx: &[u8]) -> Result<()> {
    if idx.iter().all(|&k| k >= 1 && (k as usize) <= params.p) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("expected positive indices, got {idx:?}")))
    }
}

fn check_neg(params: &SpaceParams, idx: &[u8]) -> Result<()> {
    if idx.iter().all(|&k| (k as usize) > params.p && (k as usize) <= params.m()) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("expected negative indices, got {idx:?}")))
    }
}

fn check_col(params: &SpaceParams, cols: &[u8]) -> Result<()> {
    if cols.iter().all(|&j| j >= 1 && (j as usize) <= params.n) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("column out of range: {cols:?}")))
    }
}

/// The Fock-model operator `omega(g)`.
pub fn omega(g: LieGenerator, params: &SpaceParams) -> Result<LinearOperator> {
    let name = format!("ω({g:?})");
    let cols: Vec<u8> = params.columns().collect();
    let op = match g {
        LieGenerator::OKk(a, b) => {
            check_pos(params, &[a, b])?;
            let terms = cols.iter().map(|&j| zd(a, j, b, j).minus(&zd(b, j, a, j))).collect();
            LinearOperator::sum("", terms).scaled(Scalar::from_int(-1))
        }
        LieGenerator::OKkNeg(mu, nu) => {
            check_neg(params, &[mu, nu])?;
            let terms = cols.iter().map(|&j| zd(mu, j, nu, j).minus(&zd(nu, j, mu, j))).collect();
            LinearOperator::sum("", terms)
        }
        LieGenerator::OP(a, mu) => {
            check_pos(params, &[a])?;
            check_neg(params, &[mu])?;
            let two_i_lambda = &(&Scalar::i() * &lambda()) * &Scalar::from_int(2);
            // -1/(2 i lambda) = (i/2) / lambda
            let coeff = &Scalar::from_parts(rat(1, 2), 1, 0, 0).unwrap() * &lambda_inv();
            let d2 = LinearOperator::sum("", cols.iter().map(|&j| dd(a, j, mu, j)).collect());
            let z2 = LinearOperator::sum("", cols.iter().map(|&j| zz(a, j, mu, j)).collect());
            d2.scaled(two_i_lambda).plus(&z2.scaled(coeff))
        }
        LieGenerator::SpK(j, k) => {
            check_col(params, &[j, k])?;
            let pos: Vec<_> = params.positive().map(|a| zd(a, k, a, j)).collect();
            let neg: Vec<_> = params.negative().map(|mu| zd(mu, j, mu, k)).collect();
            let body = LinearOperator::sum("", pos).minus(&LinearOperator::sum("", neg));
            let mut op = body.scaled(&Scalar::i() * &Scalar::from_int(2));
            if j == k {
                let shift = &Scalar::i() * &Scalar::from_int(params.p as i64 - params.q as i64);
                op = op.plus(&LinearOperator::identity().scaled(shift));
            }
            op
        }
        LieGenerator::SpPPlus(j, k) => {
            check_col(params, &[j, k])?;
            let pos = LinearOperator::sum("", params.positive().map(|a| zz(a, j, a, k)).collect());
            let neg = LinearOperator::sum("", params.negative().map(|mu| dd(mu, j, mu, k)).collect());
            pos.scaled(lambda_inv()).plus(&neg.scaled(&lambda() * &Scalar::from_int(4)))
        }
        LieGenerator::SpPMinus(j, k) => {
            check_col(params, &[j, k])?;
            let pos = LinearOperator::sum("", params.positive().map(|a| dd(a, j, a, k)).collect());
            let neg = LinearOperator::sum("", params.negative().map(|mu| zz(mu, j, mu, k)).collect());
            pos.scaled(&lambda() * &Scalar::from_int(-4)).plus(&neg.scaled(-&lambda_inv()))
        }
        LieGenerator::Lowering => {
            if params.n != 1 {
                return Err(Error::Precondition("the lowering operator needs genus n = 1".into()));
            }
            let quarter_i = Scalar::from_parts(rat(1, 4), 1, 0, 0).unwrap();
            omega(LieGenerator::SpPMinus(1, 1), params)?.scaled(quarter_i)
        }
    };
    Ok(op.renamed(name))
}

/// `omega(X_{rs})` for any pair of basis indices `r < s` of `V`.
pub fn omega_orthogonal(params: &SpaceParams, r: u8, s: u8) -> Result<LinearOperator> {
    let p = params.p as u8;
    match (r <= p, s <= p) {
        (true, true) => omega(LieGenerator::OKk(r, s), params),
        (false, false) => omega(LieGenerator::OKkNeg(r, s), params),
        (true, false) => omega(LieGenerator::OP(r, s), params),
        (false, true) => Ok(omega(LieGenerator::OP(s, r), params)?.scaled(Scalar::from_int(-1))),
    }
}

/// `k'_{jk} = (1/2i) w'_j o w''_k`, acting on `C^n` by `eps_j -> eps_k`.
pub fn omega_kprime(params: &SpaceParams, j: u8, k: u8) -> Result<LinearOperator> {
    let half_minus_i = Scalar::from_parts(rat(1, 2), 3, 0, 0).unwrap();
    Ok(omega(LieGenerator::SpK(j, k), params)?.scaled(half_minus_i))
}

/// `x - (1/2 pi) d/dx` or `x + (1/2 pi) d/dx` in the Schroedinger model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomKind {
    XMinusD,
    XPlusD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub index: u8,
    pub column: u8,
}

impl Atom {
    pub fn new(kind: AtomKind, index: u8, column: u8) -> Self {
        Atom { kind, index, column }
    }
}

/// Image of a single atom under the intertwiner.
pub fn intertwine_atom(atom: Atom, params: &SpaceParams) -> Result<LinearOperator> {
    if atom.index == 0 || atom.index as usize > params.m() {
        return Err(Error::Precondition(format!("index {} out of range", atom.index)));
    }
    check_col(params, &[atom.column])?;
    let positive = (atom.index as usize) <= params.p;
    let (i, j) = (atom.index, atom.column);
    let op = match (atom.kind, positive) {
        (AtomKind::XMinusD, true) => z_mul(i, j).scaled(Scalar::from_parts(rat(1, 2), 3, 0, -1)?),
        (AtomKind::XPlusD, true) => z_del(i, j).scaled(Scalar::from_parts(rat(2, 1), 1, 0, 0)?),
        (AtomKind::XMinusD, false) => z_mul(i, j).scaled(Scalar::from_parts(rat(1, 2), 1, 0, -1)?),
        (AtomKind::XPlusD, false) => z_del(i, j).scaled(Scalar::from_parts(rat(2, 1), 3, 0, 0)?),
    };
    Ok(op.renamed(format!("T({:?},{i},{j})", atom.kind)))
}

/// Image of the operator word `a_1 a_2 ... a_k` (rightmost applied first).
pub fn intertwine(word: &[Atom], params: &SpaceParams) -> Result<LinearOperator> {
    let mut op = LinearOperator::identity();
    for atom in word {
        op = op.compose(&intertwine_atom(*atom, params)?);
    }
    Ok(op)
}
