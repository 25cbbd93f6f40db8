//! Linear operators defined on basis terms and extended linearly.

use std::fmt;
use std::sync::Arc;

use super::basis::{Basis, Omega};
use super::form::MixedForm;
use super::SpaceParams;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

type BasisMap = dyn Fn(&Basis) -> MixedForm + Send + Sync;

/// Named linear map on mixed forms, determined by its values on basis terms.
#[derive(Clone)]
pub struct LinearOperator {
    name: String,
    f: Arc<BasisMap>,
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({})", self.name)
    }
}

impl LinearOperator {
    pub fn new(name: impl Into<String>, f: impl Fn(&Basis) -> MixedForm + Send + Sync + 'static) -> Self {
        LinearOperator { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn identity() -> Self {
        Self::new("id", |b| MixedForm::term(b.clone(), Scalar::one()))
    }

    pub fn zero() -> Self {
        Self::new("0", |_| MixedForm::zero())
    }

    pub fn on_basis(&self, b: &Basis) -> MixedForm {
        (self.f)(b)
    }

    pub fn apply(&self, x: &MixedForm) -> MixedForm {
        x.map_terms(|b| (self.f)(b))
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &LinearOperator) -> LinearOperator {
        let (outer, inner_c) = (self.clone(), inner.clone());
        Self::new(format!("{}∘{}", self.name, inner.name), move |b| outer.apply(&inner_c.on_basis(b)))
    }

    pub fn plus(&self, other: &LinearOperator) -> LinearOperator {
        let (a, b) = (self.clone(), other.clone());
        Self::new(format!("({}+{})", self.name, other.name), move |t| &a.on_basis(t) + &b.on_basis(t))
    }

    pub fn minus(&self, other: &LinearOperator) -> LinearOperator {
        let (a, b) = (self.clone(), other.clone());
        Self::new(format!("({}-{})", self.name, other.name), move |t| &a.on_basis(t) - &b.on_basis(t))
    }

    pub fn scaled(&self, c: Scalar) -> LinearOperator {
        let a = self.clone();
        Self::new(format!("({c})·{}", self.name), move |t| a.on_basis(t).scale(&c))
    }

    pub fn sum(name: impl Into<String>, ops: Vec<LinearOperator>) -> LinearOperator {
        Self::new(name, move |t| {
            let mut out = MixedForm::zero();
            for op in &ops {
                out.add_assign(&op.on_basis(t));
            }
            out
        })
    }

    pub fn commutator(a: &LinearOperator, b: &LinearOperator) -> LinearOperator {
        a.compose(b).minus(&b.compose(a))
    }

    pub fn anticommutator(a: &LinearOperator, b: &LinearOperator) -> LinearOperator {
        a.compose(b).plus(&b.compose(a))
    }
}

fn signed(c: i64) -> Scalar {
    Scalar::from_int(c)
}

/// Multiplication by `z_{index,column}`.
pub fn z_mul(index: u8, column: u8) -> LinearOperator {
    LinearOperator::new(format!("z{index}_{column}"), move |b| {
        MixedForm::term(
            Basis::new(b.fock.times_var(index, column), b.ext.clone(), b.word.clone()),
            Scalar::one(),
        )
    })
}

/// `d / d z_{index,column}`.
pub fn z_del(index: u8, column: u8) -> LinearOperator {
    LinearOperator::new(format!("∂{index}_{column}"), move |b| match b.fock.derivative(index, column) {
        Some((k, f)) => MixedForm::term(Basis::new(f, b.ext.clone(), b.word.clone()), signed(k as i64)),
        None => MixedForm::zero(),
    })
}

/// Left exterior multiplication by `omega_{alpha mu}`.
pub fn wedge_left(alpha: u8, mu: u8) -> LinearOperator {
    LinearOperator::new(format!("A(ω{alpha}{mu})"), move |b| match b.ext.wedge_left((alpha, mu)) {
        Some((s, e)) => MixedForm::term(Basis::new(b.fock.clone(), e, b.word.clone()), signed(s as i64)),
        None => MixedForm::zero(),
    })
}

/// Interior multiplication by the dual of `omega_{alpha mu}`; an anti-derivation.
pub fn interior(alpha: u8, mu: u8) -> LinearOperator {
    LinearOperator::new(format!("A*(ω{alpha}{mu})"), move |b| match b.ext.interior((alpha, mu)) {
        Some((s, e)) => MixedForm::term(Basis::new(b.fock.clone(), e, b.word.clone()), signed(s as i64)),
        None => MixedForm::zero(),
    })
}

fn exterior_derivation(name: String, rule: impl Fn(Omega) -> Option<Omega> + Send + Sync + 'static) -> LinearOperator {
    LinearOperator::new(name, move |b| {
        let mut out = MixedForm::zero();
        for (pos, g) in b.ext.generators().iter().enumerate() {
            if let Some(h) = rule(*g) {
                if let Some((s, e)) = b.ext.replace(pos, h) {
                    out.add_term(Basis::new(b.fock.clone(), e, b.word.clone()), signed(s as i64));
                }
            }
        }
        out
    })
}

/// Derivation with `D_{alpha beta} omega_{gamma mu} = delta_{beta gamma} omega_{alpha mu}`.
pub fn derivation_pos(alpha: u8, beta: u8) -> LinearOperator {
    exterior_derivation(format!("D{alpha}{beta}"), move |(g, mu)| (g == beta).then_some((alpha, mu)))
}

/// Derivation with `D_{mu nu} omega_{alpha lambda} = delta_{lambda nu} omega_{alpha mu}`.
pub fn derivation_neg(mu: u8, nu: u8) -> LinearOperator {
    exterior_derivation(format!("D{mu}{nu}"), move |(a, l)| (l == nu).then_some((a, mu)))
}

/// `A_j(v)`: inserts `v = sum c_k e_k` so that it becomes letter `j` (1-based).
///
/// Terms whose word is too short for position `j` are sent to zero.
pub fn insert_vector(j: usize, v: Vec<(u8, Scalar)>) -> LinearOperator {
    let letters: Vec<String> = v.iter().map(|(k, _)| k.to_string()).collect();
    LinearOperator::new(format!("A{j}(e{{{}}})", letters.join(",")), move |b| {
        let mut out = MixedForm::zero();
        if j == 0 || j > b.word.len() + 1 {
            return out;
        }
        for (k, c) in &v {
            let mut w = b.word.clone();
            w.insert(j - 1, *k);
            out.add_term(Basis::new(b.fock.clone(), b.ext.clone(), w), c.clone());
        }
        out
    })
}

/// `A_j(e_k)`.
pub fn insert_letter(j: usize, k: u8) -> LinearOperator {
    insert_vector(j, vec![(k, Scalar::one())]).renamed(format!("A{j}(e{k})"))
}

/// Which part of the dual metric `f = f+ - f-` is inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetricMode {
    /// `sum_alpha e_alpha (x) e_alpha`
    Plus,
    /// `sum_mu e_mu (x) e_mu`
    Minus,
    /// `f+ - f-`
    Full,
}

fn metric_terms(params: &SpaceParams, mode: MetricMode) -> Vec<(u8, i64)> {
    let mut v = Vec::new();
    if mode != MetricMode::Minus {
        v.extend(params.positive().map(|a| (a, 1)));
    }
    match mode {
        MetricMode::Plus => {}
        MetricMode::Minus => v.extend(params.negative().map(|mu| (mu, 1))),
        MetricMode::Full => v.extend(params.negative().map(|mu| (mu, -1))),
    }
    v
}

/// Places the chosen metric tensor so that its two factors end up in slots
/// `j` and `k` of the output word.
pub fn insert_metric(params: &SpaceParams, j: usize, k: usize, mode: MetricMode) -> Result<LinearOperator> {
    if j == k || j == 0 || k == 0 {
        return Err(Error::Precondition(format!("insert_metric needs distinct 1-based slots, got {j},{k}")));
    }
    let (a, b) = (j.min(k), j.max(k));
    let terms = metric_terms(params, mode);
    Ok(LinearOperator::new(format!("f{mode:?}[{a},{b}]"), move |t| {
        let mut out = MixedForm::zero();
        if b > t.word.len() + 2 {
            return out;
        }
        for (letter, c) in &terms {
            let mut w = t.word.clone();
            w.insert(a - 1, *letter);
            w.insert(b - 1, *letter);
            out.add_term(Basis::new(t.fock.clone(), t.ext.clone(), w), signed(*c));
        }
        out
    }))
}

/// `A_{jk}(f) = sum A_j(e) A_k(e)`: first insert at `k` of the shorter word,
/// then at `j` of the result.
pub fn insert_metric_seq(params: &SpaceParams, j: usize, k: usize, mode: MetricMode) -> LinearOperator {
    let ops: Vec<LinearOperator> = metric_terms(params, mode)
        .into_iter()
        .map(|(letter, c)| insert_letter(j, letter).compose(&insert_letter(k, letter)).scaled(signed(c)))
        .collect();
    LinearOperator::sum(format!("A{j}{k}(f{mode:?})"), ops)
}

/// `A(f)`: the metric inserted once into every unordered pair of output slots.
pub fn a_of_f(params: &SpaceParams, mode: MetricMode) -> LinearOperator {
    let params = *params;
    LinearOperator::new(format!("A(f{mode:?})"), move |t| {
        let len = t.word.len() + 2;
        let mut out = MixedForm::zero();
        for a in 1..=len {
            for b in a + 1..=len {
                let op = insert_metric(&params, a, b, mode).expect("distinct slots");
                out.add_assign(&op.on_basis(t));
            }
        }
        out
    })
}

/// `C_{ij}`: pairs letters `i` and `j` with the invariant form `diag(1^p, -1^q)`,
/// or with the identity (majorant) form when `invariant_form` is false.
pub fn contraction(params: &SpaceParams, i: usize, j: usize, invariant_form: bool) -> Result<LinearOperator> {
    if i == j || i == 0 || j == 0 {
        return Err(Error::Precondition(format!("contraction needs distinct 1-based slots, got {i},{j}")));
    }
    let (a, b) = (i.min(j), i.max(j));
    let params = *params;
    Ok(LinearOperator::new(format!("C[{a},{b}]"), move |t| {
        if b > t.word.len() || t.word[a - 1] != t.word[b - 1] {
            return MixedForm::zero();
        }
        let letter = t.word[a - 1];
        let c = if invariant_form { params.eps(letter) } else { 1 };
        let mut w = t.word.clone();
        w.remove(b - 1);
        w.remove(a - 1);
        MixedForm::term(Basis::new(t.fock.clone(), t.ext.clone(), w), signed(c))
    }))
}

/// `A_{ij}`: inserts the dual metric `f` into slots `i` and `j`.
pub fn expansion(params: &SpaceParams, i: usize, j: usize) -> Result<LinearOperator> {
    insert_metric(params, i, j, MetricMode::Full)
}

/// Derivation action on `T(V)` of `X_{rs}`, where
/// `X_{rs} v = (v_r, v) v_s - (v_s, v) v_r`.
pub fn rho(params: &SpaceParams, r: u8, s: u8) -> LinearOperator {
    let (er, es) = (params.eps(r), params.eps(s));
    LinearOperator::new(format!("ρ(X{r}{s})"), move |t| {
        let mut out = MixedForm::zero();
        for (pos, letter) in t.word.iter().enumerate() {
            let image = if *letter == r {
                Some((s, er))
            } else if *letter == s {
                Some((r, -es))
            } else {
                None
            };
            if let Some((l, c)) = image {
                let mut w = t.word.clone();
                w[pos] = l;
                out.add_term(Basis::new(t.fock.clone(), t.ext.clone(), w), signed(c));
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{ExteriorMonomial, FockMonomial};

    fn ext(gens: &[Omega]) -> MixedForm {
        let (s, e) = ExteriorMonomial::from_product(gens).unwrap();
        MixedForm::term(Basis::new(FockMonomial::one(), e, vec![]), Scalar::from_int(s as i64))
    }

    fn word(w: &[u8]) -> MixedForm {
        MixedForm::term(Basis::new(FockMonomial::one(), ExteriorMonomial::one(), w.to_vec()), Scalar::one())
    }

    #[test]
    fn interior_example() {
        let x = ext(&[(1, 3), (2, 3)]);
        assert_eq!(interior(1, 3).apply(&x), ext(&[(2, 3)]));
    }

    #[test]
    fn metric_on_empty_word() {
        let p = SpaceParams::new(1, 1, 1).unwrap();
        let out = insert_metric(&p, 1, 2, MetricMode::Full).unwrap().apply(&MixedForm::unit());
        assert_eq!(out, &word(&[1, 1]) - &word(&[2, 2]));
        assert!(insert_metric(&p, 2, 2, MetricMode::Full).is_err());
    }

    #[test]
    fn contraction_signs() {
        let p = SpaceParams::new(1, 1, 1).unwrap();
        let c = contraction(&p, 1, 2, true).unwrap();
        assert_eq!(c.apply(&word(&[1, 1])), MixedForm::unit());
        assert_eq!(c.apply(&word(&[2, 2])), MixedForm::unit().scale(&Scalar::from_int(-1)));
        let maj = contraction(&p, 1, 2, false).unwrap();
        assert_eq!(maj.apply(&word(&[2, 2])), MixedForm::unit());
    }

    #[test]
    fn contraction_after_expansion_is_dimension() {
        let p = SpaceParams::new(1, 1, 1).unwrap();
        let ce = contraction(&p, 1, 2, true).unwrap().compose(&expansion(&p, 1, 2).unwrap());
        assert_eq!(ce.apply(&MixedForm::unit()), MixedForm::unit().scale(&Scalar::from_int(2)));
        let maj = contraction(&p, 1, 2, false).unwrap().compose(&expansion(&p, 1, 2).unwrap());
        assert!(maj.apply(&MixedForm::unit()).is_zero());
    }

    #[test]
    fn sequential_insertion_lands_in_final_slots() {
        let p = SpaceParams::new(2, 1, 1).unwrap();
        let base = word(&[3, 1]);
        for j in 1..=4 {
            for k in 1..=3 {
                let seq = insert_metric_seq(&p, j, k, MetricMode::Full).apply(&base);
                let (a, b) = if j <= k { (j, k + 1) } else { (k, j) };
                let direct = insert_metric(&p, a, b, MetricMode::Full).unwrap().apply(&base);
                assert_eq!(seq, direct, "j={j} k={k}");
            }
        }
    }

    #[test]
    fn metric_sum_counts_each_pair_once() {
        let p = SpaceParams::new(2, 1, 1).unwrap();
        let base = word(&[2]);
        let mut ordered = MixedForm::zero();
        for j in 1..=3 {
            for k in 1..=2 {
                ordered.add_assign(&insert_metric_seq(&p, j, k, MetricMode::Full).apply(&base));
            }
        }
        let half = ordered.scale(&Scalar::ratio(1, 2));
        assert_eq!(a_of_f(&p, MetricMode::Full).apply(&base), half);
    }

    #[test]
    fn rho_on_pair() {
        let p = SpaceParams::new(1, 1, 1).unwrap();
        let r = rho(&p, 1, 2);
        assert_eq!(r.apply(&word(&[1])), word(&[2]));
        assert_eq!(r.apply(&word(&[2])), word(&[1]));
    }
}
