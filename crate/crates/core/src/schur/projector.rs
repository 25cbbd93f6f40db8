//! Exact projector matrices on tensor powers: Schur projectors `pi_lambda`,
//! the harmonic projector `H`, and `pi_[lambda] = H pi_lambda`.

use num_traits::{One, Zero};

use super::group::{young_symmetrizer, GroupAlgebraElement, Perm};
use super::partition::{canonical_filling, Filling, Partition};
use crate::error::{Error, Result};
use crate::linalg::{vec_add_scaled, QMatrix, QVector, Solver};
use crate::multilinear::SpaceParams;
use crate::scalar::{rat, Rational};

/// Largest tensor-power dimension for which dense projector matrices are built.
pub const MAX_TENSOR_DIM: usize = 4096;

/// Index of a 1-based word in base `dim`, first letter most significant.
pub fn word_index(word: &[u8], dim: usize) -> usize {
    word.iter().fold(0, |acc, &l| acc * dim + (l as usize - 1))
}

/// Inverse of [`word_index`].
pub fn index_word(mut idx: usize, dim: usize, ell: usize) -> Vec<u8> {
    let mut w = vec![0u8; ell];
    for slot in w.iter_mut().rev() {
        *slot = (idx % dim) as u8 + 1;
        idx /= dim;
    }
    w
}

fn check_size(dim: usize, ell: usize) -> Result<usize> {
    let total = dim.checked_pow(ell as u32).filter(|&t| t <= MAX_TENSOR_DIM);
    total.ok_or_else(|| Error::Precondition(format!("tensor power too large: {dim}^{ell}")))
}

/// Exact linear endomorphism of `T^l(C^dim)` in the word basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorMatrix {
    pub dim: usize,
    pub ell: usize,
    pub matrix: QMatrix,
}

impl ProjectorMatrix {
    pub fn identity(dim: usize, ell: usize) -> Result<Self> {
        let n = check_size(dim, ell)?;
        Ok(ProjectorMatrix { dim, ell, matrix: QMatrix::identity(n) })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn compose(&self, other: &ProjectorMatrix) -> ProjectorMatrix {
        ProjectorMatrix { dim: self.dim, ell: self.ell, matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn is_idempotent(&self) -> bool {
        self.matrix.mul(&self.matrix) == self.matrix
    }

    pub fn commutes_with(&self, other: &ProjectorMatrix) -> bool {
        self.matrix.mul(&other.matrix) == other.matrix.mul(&self.matrix)
    }

    /// `M^T G = G M` for the `l`-fold tensor power `G` of `gram`.
    pub fn is_self_adjoint(&self, gram: &[Vec<Rational>]) -> bool {
        let g = tensor_power_gram(gram, self.ell);
        self.matrix.transpose().mul(&g) == g.mul(&self.matrix)
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        self.matrix.apply(x)
    }

    /// Image of a single basis word.
    pub fn column(&self, word: &[u8]) -> QVector {
        let j = word_index(word, self.dim);
        let mut out = QVector::new();
        for i in 0..self.size() {
            let v = self.matrix.get(i, j);
            if !v.is_zero() {
                out.insert(i, v);
            }
        }
        out
    }
}

/// `G^{(x) l}` as a sparse matrix.
pub fn tensor_power_gram(gram: &[Vec<Rational>], ell: usize) -> QMatrix {
    let m = gram.len();
    let n = m.pow(ell as u32);
    let mut rows: Vec<QVector> = vec![QVector::from([(0, Rational::one())])];
    for _ in 0..ell {
        let size = rows.len();
        let mut next = vec![QVector::new(); size * m];
        for (i, r) in rows.iter().enumerate() {
            for (a, grow) in gram.iter().enumerate() {
                for (b, g) in grow.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    for (j, v) in r {
                        next[i * m + a].insert(j * m + b, v * g);
                    }
                }
            }
        }
        rows = next;
    }
    let mut out = QMatrix::zeros(n, n);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r {
            out.set(i, j, v);
        }
    }
    out
}

/// Action matrix of a group algebra element on `T^l(C^dim)`.
pub fn group_element_matrix(s: &GroupAlgebraElement, dim: usize) -> Result<ProjectorMatrix> {
    let ell = s.degree();
    let n = check_size(dim, ell)?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let w = index_word(j, dim, ell);
        let mut col = QVector::new();
        for (g, c) in s.terms() {
            vec_add_scaled(&mut col, &QVector::from([(word_index(&g.act(&w), dim), Rational::one())]), c);
        }
        cols.push(col);
    }
    Ok(ProjectorMatrix { dim, ell, matrix: QMatrix::from_columns(n, &cols) })
}

/// `pi_lambda = s_{t0}` on `T^l(C^dim)` for the row-by-row filling `t0`.
pub fn schur_projector(shape: &Partition, dim: usize) -> Result<ProjectorMatrix> {
    if shape.size() == 0 {
        return ProjectorMatrix::identity(dim, 0);
    }
    let s = young_symmetrizer(&canonical_filling(shape))?;
    group_element_matrix(&s, dim)
}

/// Permutation of tensor slots as a matrix.
pub fn permutation_matrix(p: &Perm, dim: usize) -> Result<ProjectorMatrix> {
    group_element_matrix(&GroupAlgebraElement::basis(p.clone()), dim)
}

/// Nondegenerate symmetric bilinear form on `Q^m` with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: Vec<Vec<Rational>>,
    pub inverse: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn from_gram(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let m = gram.len();
        if gram.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("gram matrix must be square".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("gram matrix must be symmetric".into()));
                }
            }
        }
        let inverse = invert(&gram).ok_or_else(|| Error::InvalidInput("gram matrix is singular".into()))?;
        Ok(QuadraticForm { gram, inverse })
    }

    /// `diag(1^p, -1^q)`.
    pub fn from_params(params: &SpaceParams) -> Self {
        let m = params.m();
        let gram: Vec<Vec<Rational>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { rat(params.eps(i as u8 + 1), 1) } else { rat(0, 1) }).collect())
            .collect();
        QuadraticForm { inverse: gram.clone(), gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }
}

/// Gauss-Jordan inverse of a small dense matrix.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / m[col][col].clone();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let c = m[i][col].clone();
                let prow = m[col].clone();
                for (x, p) in m[i].iter_mut().zip(prow) {
                    *x -= &c * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn slot_pairs(ell: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..ell {
        for b in a + 1..ell {
            v.push((a, b));
        }
    }
    v
}

/// Harmonic projection on `T^l(V)`: projection onto `cap ker C_I` along
/// `sum A_I(T^{l-2})`.
///
/// A vector `w` is mapped to `w - E u` where `u` solves `C E u = C w`; the
/// solver for `C E` is computed once.
#[derive(Clone, Debug)]
pub struct HarmonicProjector {
    pub form: QuadraticForm,
    pub ell: usize,
    contraction: QMatrix,
    expansion: QMatrix,
    solver: Option<Solver>,
}

impl HarmonicProjector {
    pub fn new(form: &QuadraticForm, ell: usize) -> Result<Self> {
        let m = form.dim();
        let n = check_size(m, ell)?;
        if ell < 2 {
            return Ok(HarmonicProjector {
                form: form.clone(),
                ell,
                contraction: QMatrix::zeros(0, n),
                expansion: QMatrix::zeros(n, 0),
                solver: None,
            });
        }
        let pairs = slot_pairs(ell);
        let small = m.pow(ell as u32 - 2);
        let unknowns = pairs.len() * small;
        let mut contraction = QMatrix::zeros(unknowns, n);
        let mut exp_cols = Vec::with_capacity(unknowns);
        for &(a, b) in &pairs {
            for u in 0..small {
                let rest = index_word(u, m, ell - 2);
                let mut col = QVector::new();
                for x in 0..m {
                    for y in 0..m {
                        let g = &form.inverse[x][y];
                        if g.is_zero() {
                            continue;
                        }
                        let mut w = rest.clone();
                        w.insert(a, x as u8 + 1);
                        w.insert(b, y as u8 + 1);
                        col.insert(word_index(&w, m), g.clone());
                    }
                }
                exp_cols.push(col);
            }
        }
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            for u in 0..small {
                let rest = index_word(u, m, ell - 2);
                for x in 0..m {
                    for y in 0..m {
                        let g = &form.gram[x][y];
                        if g.is_zero() {
                            continue;
                        }
                        let mut w = rest.clone();
                        w.insert(a, x as u8 + 1);
                        w.insert(b, y as u8 + 1);
                        contraction.set(pi * small + u, word_index(&w, m), g.clone());
                    }
                }
            }
        }
        let expansion = QMatrix::from_columns(n, &exp_cols);
        let solver = Solver::new(&contraction.mul(&expansion));
        Ok(HarmonicProjector { form: form.clone(), ell, contraction, expansion, solver: Some(solver) })
    }

    pub fn tensor_dim(&self) -> usize {
        self.expansion.rows()
    }

    /// Stacked contractions `C_I`, one block per slot pair.
    pub fn contraction_matrix(&self) -> &QMatrix {
        &self.contraction
    }

    /// Stacked expansions `A_I`.
    pub fn expansion_matrix(&self) -> &QMatrix {
        &self.expansion
    }

    /// True when the harmonic space and the span of the expansions form a direct sum.
    pub fn is_direct_sum(&self) -> bool {
        match &self.solver {
            None => true,
            Some(s) => self.expansion.transpose().rank() == s.rank(),
        }
    }

    pub fn apply(&self, w: &QVector) -> Result<QVector> {
        let Some(solver) = &self.solver else {
            return Ok(w.clone());
        };
        let u = solver.solve(&self.contraction.apply(w))?;
        let mut out = w.clone();
        vec_add_scaled(&mut out, &self.expansion.apply(&u), &-Rational::one());
        Ok(out)
    }

    pub fn matrix(&self) -> Result<ProjectorMatrix> {
        if !self.is_direct_sum() {
            return Err(Error::Degenerate("harmonic space and expansions do not form a direct sum".into()));
        }
        let n = self.tensor_dim();
        let cols = (0..n)
            .map(|j| self.apply(&QVector::from([(j, Rational::one())])))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectorMatrix { dim: self.form.dim(), ell: self.ell, matrix: QMatrix::from_columns(n, &cols) })
    }
}

/// `H` on `T^l(V)` for the invariant form of signature `(p, q)`.
pub fn harmonic_projector(ell: usize, params: &SpaceParams) -> Result<ProjectorMatrix> {
    HarmonicProjector::new(&QuadraticForm::from_params(params), ell)?.matrix()
}

/// `pi_[lambda] = H pi_lambda` on `T^l(V)`.
pub fn harmonic_schur_projector(shape: &Partition, params: &SpaceParams) -> Result<ProjectorMatrix> {
    harmonic_schur_projector_for(shape, &QuadraticForm::from_params(params))
}

pub fn harmonic_schur_projector_for(shape: &Partition, form: &QuadraticForm) -> Result<ProjectorMatrix> {
    let h = HarmonicProjector::new(form, shape.size())?.matrix()?;
    Ok(h.compose(&schur_projector(shape, form.dim())?))
}

/// The word `e_{f(lambda)}`, read row by row to match the row-major `t0`.
pub fn filling_word(f: &Filling) -> Vec<u8> {
    f.row_reading()
}

/// `x_{f(lambda)} = x_{a_1} (x) ... (x) x_{a_l}` for vectors `x_1..x_n` in `Q^m`.
pub fn coefficient_word(x: &[Vec<Rational>], f: &Filling) -> Result<QVector> {
    let word = filling_word(f);
    let m = x.first().map_or(0, Vec::len);
    if word.iter().any(|&a| a == 0 || a as usize > x.len()) || x.iter().any(|v| v.len() != m) {
        return Err(Error::InvalidInput(format!("filling {f} does not fit {} vectors", x.len())));
    }
    check_size(m, word.len())?;
    let mut acc: Vec<(usize, Rational)> = vec![(0, Rational::one())];
    for &a in &word {
        let v = &x[a as usize - 1];
        let mut next = Vec::new();
        for (idx, c) in &acc {
            for (k, vk) in v.iter().enumerate() {
                if !vk.is_zero() {
                    next.push((idx * m + k, c * vk));
                }
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().collect())
}

/// `x_[f(lambda)] = pi_[lambda] x_{f(lambda)}`.
pub fn harmonic_word(x: &[Vec<Rational>], f: &Filling, form: &QuadraticForm) -> Result<QVector> {
    let p = harmonic_schur_projector_for(f.shape(), form)?;
    Ok(p.apply(&coefficient_word(x, f)?))
}
