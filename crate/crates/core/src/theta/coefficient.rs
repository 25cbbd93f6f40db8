//! Fourier coefficients with Schur-valued payloads.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::enumerate::{check_beta, enumerate_representations};
use super::lattice::{rational_string, Lattice};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::scalar::{rat, Rational};
use crate::schur::{
    filling_word, harmonic_schur_projector_for, index_word, semistandard_fillings, sorted_words, word_index, Filling,
    Partition, Perm, ProjectorMatrix, QuadraticForm, SymTensor,
};

/// Largest `m^l` for which multi-row payloads use the full projector matrix.
pub const MAX_FULL_PROJECTOR: usize = 1296;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCoefficient {
    pub beta: Vec<Vec<Rational>>,
    pub rank_t: usize,
    pub count: usize,
    pub dim: usize,
    pub ell: usize,
    /// `sum_x x_[f]` for each semistandard `f`, in the word basis of `T^l(Q^m)`.
    pub payload: BTreeMap<Filling, QVector>,
}

impl GenusCoefficient {
    pub fn payload_is_zero(&self) -> bool {
        self.payload.values().all(|v| v.values().all(Zero::is_zero))
    }

    pub fn to_json(&self) -> Value {
        let beta: Vec<Vec<String>> = self.beta.iter().map(|r| r.iter().map(rational_string).collect()).collect();
        let mut payload = serde_json::Map::new();
        for (f, v) in &self.payload {
            let terms: Vec<Value> = v
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| json!({ "t": index_word(*i, self.dim, self.ell), "c": rational_string(c) }))
                .collect();
            payload.insert(f.key(), Value::Array(terms));
        }
        json!({ "beta": beta, "rank": self.rank_t, "count": self.count, "payload": payload })
    }
}

/// Precomputed projection data for one shape on one lattice.
struct PayloadPlan {
    shape: Partition,
    fillings: Vec<Filling>,
    form: QuadraticForm,
    full: Option<ProjectorMatrix>,
}

impl PayloadPlan {
    fn new(lat: &Lattice, shape: &Partition, n: usize) -> Result<Self> {
        if shape.length() > n {
            return Err(Error::Precondition(format!("shape {shape} has more than n = {n} rows")));
        }
        let form = QuadraticForm::from_gram(lat.gram().to_vec())?;
        let m = lat.dim();
        let ell = shape.size();
        let full = if shape.length() > 1 {
            let size = m.checked_pow(ell as u32).unwrap_or(usize::MAX);
            if size > MAX_FULL_PROJECTOR {
                return Err(Error::Precondition(format!(
                    "multi-row payloads need m^l <= {MAX_FULL_PROJECTOR}, got {m}^{ell}"
                )));
            }
            Some(harmonic_schur_projector_for(shape, &form)?)
        } else {
            None
        };
        let fillings = if ell == 0 { Vec::new() } else { semistandard_fillings(shape, n) };
        Ok(PayloadPlan { shape: shape.clone(), fillings, form, full })
    }

    fn project(&self, raw: &QVector) -> Result<QVector> {
        match &self.full {
            Some(p) => Ok(p.apply(raw)),
            None => {
                let m = self.form.dim();
                let ell = self.shape.size();
                let perms = Perm::all(ell);
                let norm = rat(1, perms.len() as i64);
                let mut sym = SymTensor::zero(m, ell);
                for k in sorted_words(m, ell) {
                    let mut s = Rational::zero();
                    for p in &perms {
                        if let Some(v) = raw.get(&word_index(&p.act(&k), m)) {
                            s += v;
                        }
                    }
                    if !s.is_zero() {
                        sym.values.insert(k, s * &norm);
                    }
                }
                Ok(sym.harmonic_part(&self.form)?.to_full())
            }
        }
    }
}

/// Common denominator of all coordinates in the coset.
fn coset_denominator(lat: &Lattice) -> BigInt {
    let mut d = BigInt::one();
    if let Some(c) = lat.coset() {
        for r in c.h.iter().flatten() {
            d = d.lcm(r.denom());
        }
    }
    d
}

/// `sum_x x_{a_1} (x) ... (x) x_{a_l}` for each filling, before projection.
fn raw_sums(lat: &Lattice, tuples: &[Vec<Vec<Rational>>], plan: &PayloadPlan) -> Result<Vec<QVector>> {
    let m = lat.dim();
    let ell = plan.shape.size();
    let size = m.checked_pow(ell as u32).ok_or_else(|| Error::Precondition("tensor power too large".into()))?;
    let den = coset_denominator(lat);
    let scaled: Vec<Vec<Vec<i64>>> = tuples
        .iter()
        .map(|x| {
            x.iter()
                .map(|v| {
                    v.iter()
                        .map(|c| {
                            (c * Rational::from_integer(den.clone()))
                                .to_integer()
                                .to_i64()
                                .ok_or_else(|| Error::Precondition("coordinate out of range".into()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let max = scaled.iter().flatten().flatten().map(|c| c.unsigned_abs()).max().unwrap_or(0) as f64;
    if max.powi(ell as i32) * (scaled.len().max(1) as f64) > 1e36 {
        return Err(Error::Precondition("payload sums exceed the integer accumulator".into()));
    }
    let scale = Rational::from_integer(den).pow(ell as i32).recip();
    plan.fillings
        .iter()
        .map(|f| {
            let word = filling_word(f);
            let total = scaled
                .par_iter()
                .fold(
                    || vec![0i128; size],
                    |mut acc, x| {
                        let mut cur = vec![1i128];
                        for &a in &word {
                            let v = &x[a as usize - 1];
                            let mut next = Vec::with_capacity(cur.len() * m);
                            for c in &cur {
                                next.extend(v.iter().map(|&vk| c * vk as i128));
                            }
                            cur = next;
                        }
                        for (s, c) in acc.iter_mut().zip(cur) {
                            *s += c;
                        }
                        acc
                    },
                )
                .reduce(|| vec![0i128; size], |a, b| a.into_iter().zip(b).map(|(x, y)| x + y).collect());
            Ok(total
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (i, Rational::from_integer(BigInt::from(c)) * &scale))
                .collect())
        })
        .collect()
}

/// Unprojected sums `sum_x x_{f(lambda)}` over all representations of `beta`.
pub fn raw_payload(lat: &Lattice, beta: &[Vec<Rational>], shape: &Partition) -> Result<BTreeMap<Filling, QVector>> {
    let n = check_beta(beta)?;
    let plan = PayloadPlan::new(lat, shape, n)?;
    let tuples = enumerate_representations(lat, beta)?;
    let sums = raw_sums(lat, &tuples, &plan)?;
    Ok(plan.fillings.iter().cloned().zip(sums).collect())
}

fn assemble_with(lat: &Lattice, beta: &[Vec<Rational>], plan: &PayloadPlan) -> Result<GenusCoefficient> {
    let tuples = enumerate_representations(lat, beta)?;
    let sums = raw_sums(lat, &tuples, plan)?;
    let mut payload = BTreeMap::new();
    for (f, raw) in plan.fillings.iter().zip(sums) {
        payload.insert(f.clone(), plan.project(&raw)?);
    }
    Ok(GenusCoefficient {
        beta: beta.to_vec(),
        rank_t: QMatrix::from_dense(beta).rank(),
        count: tuples.len(),
        dim: lat.dim(),
        ell: plan.shape.size(),
        payload,
    })
}

/// Count and harmonic payloads `sum_x pi_[lambda] x_{f(lambda)}` at `beta`.
pub fn assemble_coefficient(lat: &Lattice, beta: &[Vec<Rational>], shape: &Partition) -> Result<GenusCoefficient> {
    let n = check_beta(beta)?;
    assemble_with(lat, beta, &PayloadPlan::new(lat, shape, n)?)
}

/// Exact test that every principal minor is nonnegative.
pub fn is_positive_semidefinite(beta: &[Vec<Rational>]) -> bool {
    let n = beta.len();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| idx.iter().map(|&j| beta[i][j].clone()).collect()).collect();
        !determinant(sub).is_negative()
    })
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Positive semidefinite `n x n` matrices with integer diagonal in `0..=bound` and
/// half-integral off-diagonal entries, ordered by trace and then lexicographically
/// by rows.
pub fn psd_betas(n: usize, bound: u32) -> Vec<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    let mut diag = vec![0i64; n];
    fn diagonals(k: usize, bound: i64, diag: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == diag.len() {
            out.push(diag.clone());
            return;
        }
        for d in 0..=bound {
            diag[k] = d;
            diagonals(k + 1, bound, diag, out);
        }
    }
    let mut diags = Vec::new();
    diagonals(0, bound as i64, &mut diag, &mut diags);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for d in diags {
        let mut beta: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { rat(d[i], 1) } else { Rational::zero() }).collect()).collect();
        fn off(k: usize, pairs: &[(usize, usize)], d: &[i64], beta: &mut Vec<Vec<Rational>>, out: &mut Vec<Vec<Vec<Rational>>>) {
            if k == pairs.len() {
                if is_positive_semidefinite(beta) {
                    out.push(beta.clone());
                }
                return;
            }
            let (i, j) = pairs[k];
            let lim = 4 * d[i] * d[j];
            let mut t = 0i64;
            while (t + 1) * (t + 1) <= lim {
                t += 1;
            }
            for s in -t..=t {
                beta[i][j] = rat(s, 2);
                beta[j][i] = rat(s, 2);
                off(k + 1, pairs, d, beta, out);
            }
        }
        off(0, &pairs, &d, &mut beta, &mut out);
    }
    let trace = |b: &Vec<Vec<Rational>>| -> Rational { (0..b.len()).map(|i| b[i][i].clone()).sum() };
    out.sort_by(|a, b| trace(a).cmp(&trace(b)).then_with(|| a.cmp(b)));
    out
}

/// Coefficients at every `beta` of [`psd_betas`].
pub fn series_table(lat: &Lattice, shape: &Partition, n: usize, bound: u32) -> Result<Vec<GenusCoefficient>> {
    if n == 0 {
        return Err(Error::InvalidInput("genus must be at least 1".into()));
    }
    let plan = PayloadPlan::new(lat, shape, n)?;
    psd_betas(n, bound).iter().map(|b| assemble_with(lat, b, &plan)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(v: Value) -> Lattice {
        Lattice::from_json(&v).unwrap()
    }

    #[test]
    fn beta_ordering() {
        let b = psd_betas(1, 3);
        assert_eq!(b, (0..=3).map(|k| vec![vec![rat(k, 1)]]).collect::<Vec<_>>());
        let b2 = psd_betas(2, 1);
        assert_eq!(b2[0], vec![vec![rat(0, 1); 2]; 2]);
        // diag (1,1): off-diagonal -1, -1/2, 0, 1/2, 1
        assert_eq!(b2.len(), 1 + 2 + 5);
        assert!(b2.iter().all(|b| is_positive_semidefinite(b)));
    }

    #[test]
    fn line_payload_vanishes() {
        let lat = lattice(json!({"gram": [[1]]}));
        let c = assemble_coefficient(&lat, &[vec![rat(2, 1)]], &"2".parse().unwrap()).unwrap();
        assert_eq!(c.count, 2);
        assert!(c.payload_is_zero());
        let raw = raw_payload(&lat, &[vec![rat(2, 1)]], &"2".parse().unwrap()).unwrap();
        assert!(raw.values().all(|v| v.get(&0) == Some(&rat(8, 1))));
    }

    #[test]
    fn empty_shape_counts() {
        let lat = lattice(json!({"gram": [[1,0],[0,1]]}));
        let t = series_table(&lat, &Partition::empty(), 1, 2).unwrap();
        assert_eq!(t.iter().map(|c| c.count).collect::<Vec<_>>(), vec![1, 4, 4]);
        assert!(t.iter().all(|c| c.payload.is_empty()));
        assert_eq!(t[0].rank_t, 0);
        assert_eq!(t[1].rank_t, 1);
    }

    #[test]
    fn json_shape() {
        let lat = lattice(json!({"gram": [[2,1],[1,2]]}));
        let c = assemble_coefficient(&lat, &[vec![rat(1, 1)]], &"1".parse().unwrap()).unwrap();
        assert_eq!(c.count, 6);
        let v = c.to_json();
        assert_eq!(v["beta"], json!([["1"]]));
        assert_eq!(v["payload"]["1"], json!([]));
    }
}
