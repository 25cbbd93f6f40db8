//! Fincke-Pohst enumeration with exact rational bound tests.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::lattice::Lattice;
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// All `x` in `shift + modulus Z^m` with `(x, x) = norm`, sorted.
pub fn vectors_of_norm(lat: &Lattice, shift: &[Rational], modulus: &Rational, norm: &Rational) -> Vec<Vec<Rational>> {
    if norm.is_negative() {
        return Vec::new();
    }
    let m = lat.dim();
    let top = m - 1;
    let starts = candidates(lat, shift, modulus, top, &vec![Rational::zero(); m], norm);
    let mut out: Vec<Vec<Rational>> = starts
        .into_par_iter()
        .flat_map_iter(|(xi, rem)| {
            let mut x = vec![Rational::zero(); m];
            x[top] = xi;
            let mut found = Vec::new();
            descend(lat, shift, modulus, top, &mut x, rem, &mut found);
            found
        })
        .collect();
    out.sort();
    out
}

/// Values of coordinate `i` compatible with the already chosen coordinates `> i`,
/// with the remaining budget after each.
fn candidates(
    lat: &Lattice,
    shift: &[Rational],
    modulus: &Rational,
    i: usize,
    x: &[Rational],
    rem: &Rational,
) -> Vec<(Rational, Rational)> {
    let l = lat.lower();
    let d = &lat.pivots()[i];
    let mut c = Rational::zero();
    for (j, xj) in x.iter().enumerate().skip(i + 1) {
        if !xj.is_zero() {
            c -= &l[j][i] * xj;
        }
    }
    let h = &shift[i];
    let cost = |t: &Rational| -> Rational {
        let xi = h + modulus * t;
        let dx = &xi - &c;
        d * &dx * &dx
    };
    let t0 = ((&c - h) / modulus + rat(1, 2)).floor();
    let mut out = Vec::new();
    if cost(&t0) > *rem {
        return out;
    }
    let mut t = t0.clone();
    loop {
        let k = cost(&t);
        if k > *rem {
            break;
        }
        out.push((h + modulus * &t, rem - k));
        t += Rational::one();
    }
    let mut t = t0 - Rational::one();
    loop {
        let k = cost(&t);
        if k > *rem {
            break;
        }
        out.push((h + modulus * &t, rem - k));
        t -= Rational::one();
    }
    out
}

fn descend(
    lat: &Lattice,
    shift: &[Rational],
    modulus: &Rational,
    i: usize,
    x: &mut Vec<Rational>,
    rem: Rational,
    found: &mut Vec<Vec<Rational>>,
) {
    if i == 0 {
        if rem.is_zero() {
            found.push(x.clone());
        }
        return;
    }
    for (xi, r) in candidates(lat, shift, modulus, i - 1, x, &rem) {
        x[i - 1] = xi;
        descend(lat, shift, modulus, i - 1, x, r, found);
    }
    x[i - 1] = Rational::zero();
}

/// Checks that `beta` is a symmetric `n x n` matrix.
pub fn check_beta(beta: &[Vec<Rational>]) -> Result<usize> {
    let n = beta.len();
    if n == 0 || beta.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("beta must be a nonempty square matrix".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if beta[i][j] != beta[j][i] {
                return Err(Error::InvalidInput("beta must be symmetric".into()));
            }
        }
    }
    Ok(n)
}

/// All tuples `x = (x_1, .., x_n)` from the coset with `(1/2)(x_i, x_j) = beta_ij`,
/// in lexicographic order.
pub fn enumerate_representations(lat: &Lattice, beta: &[Vec<Rational>]) -> Result<Vec<Vec<Vec<Rational>>>> {
    let n = check_beta(beta)?;
    if beta.iter().enumerate().any(|(i, r)| r[i].is_negative()) {
        return Ok(Vec::new());
    }
    let two = rat(2, 1);
    let mut shells = Vec::with_capacity(n);
    for (i, row) in beta.iter().enumerate() {
        let (h, b) = lat.column_coset(i)?;
        shells.push(vectors_of_norm(lat, &h, &b, &(&two * &row[i])));
    }
    let targets: Vec<Vec<Rational>> = beta.iter().map(|r| r.iter().map(|b| &two * b).collect()).collect();
    let out = shells[0]
        .par_iter()
        .flat_map_iter(|x0| {
            let mut found = Vec::new();
            let mut tuple = vec![x0.clone()];
            extend(lat, &shells, &targets, &mut tuple, &mut found);
            found
        })
        .collect();
    Ok(out)
}

fn extend(
    lat: &Lattice,
    shells: &[Vec<Vec<Rational>>],
    targets: &[Vec<Rational>],
    tuple: &mut Vec<Vec<Rational>>,
    found: &mut Vec<Vec<Vec<Rational>>>,
) {
    let k = tuple.len();
    if k == shells.len() {
        found.push(tuple.clone());
        return;
    }
    for y in &shells[k] {
        if (0..k).all(|i| lat.pair(&tuple[i], y) == targets[i][k]) {
            tuple.push(y.clone());
            extend(lat, shells, targets, tuple, found);
            tuple.pop();
        }
    }
}
