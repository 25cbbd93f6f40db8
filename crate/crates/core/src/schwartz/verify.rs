//! Every identity reduced to a list of exact residuals that must vanish.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::Value;

use super::bracket::{project_tensor_slot, sigma_word, substitute_columns};
use super::forms::{DPart, Forms, Mutation};
use crate::error::{Error, Result};
use crate::multilinear::{
    derivation_neg, derivation_pos, insert_letter, rho, wedge_left, z_del, z_mul, Basis, ExteriorMonomial,
    FockMonomial, LinearOperator, MetricMode, MixedForm, SpaceParams,
};
use crate::scalar::{rat, Rational, Scalar};
use crate::schur::{
    filling_word, harmonic_schur_projector, invert, semistandard_fillings, Partition, Perm, ProjectorMatrix,
};
use crate::weil::{intertwine_atom, omega_kprime, Atom, AtomKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Closedness,
    KprimeInvariance,
    Recursion,
    Lowering,
    PsiBase,
    Lem3a,
    Prop3a,
    Lemma4a,
    Lemma4b,
    Equivariance,
    SigmaGlInvariance,
    Lemma3b,
    Lemma3c,
    Newdef,
    K3,
    Holomorphicity,
    Intertwiner,
}

impl Identity {
    pub const ALL: [Identity; 17] = [
        Identity::Closedness,
        Identity::KprimeInvariance,
        Identity::Recursion,
        Identity::Lowering,
        Identity::PsiBase,
        Identity::Lem3a,
        Identity::Prop3a,
        Identity::Lemma4a,
        Identity::Lemma4b,
        Identity::Equivariance,
        Identity::SigmaGlInvariance,
        Identity::Lemma3b,
        Identity::Lemma3c,
        Identity::Newdef,
        Identity::K3,
        Identity::Holomorphicity,
        Identity::Intertwiner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Closedness => "closedness",
            Identity::KprimeInvariance => "kprime_invariance",
            Identity::Recursion => "recursion",
            Identity::Lowering => "lowering",
            Identity::PsiBase => "psi_base",
            Identity::Lem3a => "lem3a",
            Identity::Prop3a => "prop3a",
            Identity::Lemma4a => "lemma4a",
            Identity::Lemma4b => "lemma4b",
            Identity::Equivariance => "equivariance",
            Identity::SigmaGlInvariance => "sigma_gl_invariance",
            Identity::Lemma3b => "lemma3b",
            Identity::Lemma3c => "lemma3c",
            Identity::Newdef => "newdef",
            Identity::K3 => "k3",
            Identity::Holomorphicity => "holomorphicity",
            Identity::Intertwiner => "intertwiner",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown identity {s:?}")))
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One cell of a verification grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub identity: Identity,
    pub params: SpaceParams,
    pub ell: usize,
    pub j: Option<usize>,
    pub lambda: Option<Partition>,
    pub mutation: Option<Mutation>,
}

impl Request {
    pub fn new(identity: Identity, params: SpaceParams, ell: usize) -> Self {
        Request { identity, params, ell, j: None, lambda: None, mutation: None }
    }

    pub fn with_j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_lambda(mut self, lambda: Partition) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub ell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
    pub pass: bool,
    /// Number of residuals that were required to vanish.
    pub checks: usize,
    /// Label of the first nonvanishing residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<String>,
    pub residual_terms: usize,
    /// First terms of the first nonvanishing residual.
    pub residual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn from_residuals(req: &Request, residuals: Vec<(String, MixedForm)>) -> Self {
        let checks = residuals.len();
        let bad = residuals.into_iter().find(|(_, r)| !r.is_zero());
        let (failing, residual_terms, residual) = match bad {
            Some((label, r)) => (Some(label), r.len(), r.head_json(5)),
            None => (None, 0, Value::Array(vec![])),
        };
        VerificationReport {
            identity: req.identity,
            p: req.params.p,
            q: req.params.q,
            n: req.params.n,
            ell: req.ell,
            j: req.j,
            lambda: req.lambda.clone(),
            mutation: req.mutation,
            pass: failing.is_none(),
            checks,
            failing,
            residual_terms,
            residual,
            elapsed_ms: None,
        }
    }

    /// Cell label `identity (p,q,n) l=.. [j=..] [lambda=..]`.
    pub fn cell(&self) -> String {
        let mut s = format!("{} (p,q,n)=({},{},{}) l={}", self.identity, self.p, self.q, self.n, self.ell);
        if let Some(j) = self.j {
            s.push_str(&format!(" j={j}"));
        }
        if let Some(l) = &self.lambda {
            s.push_str(&format!(" lambda={l}"));
        }
        s
    }
}

pub fn verify(req: &Request) -> Result<VerificationReport> {
    Ok(VerificationReport::from_residuals(req, residuals(req)?))
}

/// As [`verify`], recording wall-clock time.
pub fn verify_timed(req: &Request) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = verify(req)?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}

/// The cells run by `verify --grid default`.
pub fn default_grid() -> Vec<Request> {
    let sp = |p, q, n| SpaceParams::new(p, q, n).unwrap();
    let pairs = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)];
    let mut out = Vec::new();
    for &(p, q) in &pairs {
        let s = sp(p, q, 1);
        for ell in 0..=3 {
            for id in [Identity::Closedness, Identity::KprimeInvariance, Identity::Lowering, Identity::Newdef, Identity::K3]
            {
                out.push(Request::new(id, s, ell));
            }
            for id in [Identity::Lemma4a, Identity::Lemma4b] {
                out.push(Request::new(id, s, ell));
            }
            if ell >= 1 {
                for id in [Identity::Recursion, Identity::Lem3a, Identity::Prop3a, Identity::Lemma3c] {
                    out.push(Request::new(id, s, ell));
                }
            }
        }
        out.push(Request::new(Identity::PsiBase, s, 0));
        out.push(Request::new(Identity::Lemma3b, s, 1));
    }
    for (p, q) in [(2, 1), (2, 2)] {
        out.push(Request::new(Identity::Holomorphicity, sp(p, q, 1), 2).with_lambda(Partition::new(vec![2]).unwrap()));
    }
    let s2 = sp(2, 1, 2);
    for ell in 0..=2 {
        out.push(Request::new(Identity::Closedness, s2, ell));
        out.push(Request::new(Identity::KprimeInvariance, s2, ell));
        out.push(Request::new(Identity::Equivariance, s2, ell));
        out.push(Request::new(Identity::SigmaGlInvariance, s2, ell));
    }
    for (p, q, n) in [(1, 1, 1), (2, 1, 1), (2, 1, 2)] {
        out.push(Request::new(Identity::Intertwiner, sp(p, q, n), 2));
    }
    out
}

fn residuals(req: &Request) -> Result<Vec<(String, MixedForm)>> {
    let forms = match req.mutation {
        Some(m) => Forms::with_mutation(req.params, m),
        None => Forms::new(req.params),
    };
    if req.params.n > req.params.p {
        return Err(Error::Precondition(format!("need n <= p, got n = {}, p = {}", req.params.n, req.params.p)));
    }
    let ell = req.ell as i64;
    let c = Checker { f: &forms, req };
    match req.identity {
        Identity::Closedness => c.closedness(),
        Identity::KprimeInvariance => c.kprime(),
        Identity::Recursion => c.per_j(|j| {
            let metric = forms.recursion_metric_term(j, ell)?;
            Ok(vec![(format!("j={j}"), recursion_residual(&forms, j, ell, &metric, -1)?)])
        }),
        Identity::Lem3a => c.per_j(|j| {
            let mut r = forms.a_sigma(j).apply(&forms.phi_ql(ell - 1)?);
            r = r - forms.phi_ql(ell)? - forms.term_a(j, ell)? - forms.term_b(j, ell)?;
            r = r - forms.term_c(j, ell, MetricMode::Plus)?;
            Ok(vec![(format!("j={j}"), r)])
        }),
        Identity::Prop3a => c.per_j(|j| {
            let r = d(&forms).apply(&forms.lambda_form(j, ell - 1)?)
                + forms.term_a(j, ell)?
                + forms.term_b(j, ell)?
                + forms.term_c(j, ell, MetricMode::Minus)?;
            Ok(vec![(format!("j={j}"), r)])
        }),
        Identity::Lemma3c => c.per_j(|j| c.lemma3c(j)),
        Identity::Lemma3b => c.lemma3b(),
        Identity::Lowering => {
            let r = forms.lowering()?.apply(&forms.phi_ql(ell)?) - d(&forms).apply(&c.lowering_primitive()?)
                + forms.lowering_metric_term(ell, MetricMode::Full)?;
            Ok(vec![("omega(L) phi".into(), r)])
        }
        Identity::PsiBase => {
            let r = forms.lowering()?.apply(&forms.phi_ql(0)?) - d(&forms).apply(&forms.psi(0)?);
            Ok(vec![("omega(L) phi_{q,0}".into(), r)])
        }
        Identity::Newdef => Ok(vec![("psi".into(), forms.psi(ell)? - forms.psi_direct(ell)?)]),
        Identity::K3 => {
            let phi = forms.phi_ql(ell)?;
            let ops = req.params.positive().map(|a| z_del(a, 1).compose(&z_mul(a, 1))).collect();
            let k = (req.params.p + req.params.q) as i64 + ell;
            let r = LinearOperator::sum("", ops).apply(&phi) - phi.scale(&Scalar::from_int(k));
            Ok(vec![("sum d z phi".into(), r)])
        }
        Identity::Lemma4a => {
            let lower = forms.lowering()?;
            let mut r = lower.apply(&forms.phi_ql(ell)?) - lower.apply(&forms.phi_ql(0)?).mul(&forms.phi_0l(ell)?);
            for j in 1..=req.ell {
                r = r + forms.term_b(j, ell)?;
            }
            r = r + forms.lowering_metric_term(ell, MetricMode::Plus)?;
            Ok(vec![("omega(L) phi".into(), r)])
        }
        Identity::Lemma4b => {
            let df = forms.d_f_prime().plus(&forms.d_f_double_prime());
            let half = Scalar::ratio(1, 2);
            let mut r1 = df.apply(&forms.psi(ell)?) - df.apply(&forms.psi(0)?).mul(&forms.phi_0l(ell)?);
            let mut r2 = forms.d_v().apply(&forms.psi(ell)?);
            for j in 1..=req.ell {
                r1.add_scaled(&forms.term_b(j, ell)?, &half);
                r2.add_scaled(&forms.term_a(j, ell)?, &-&half);
            }
            Ok(vec![("(i) d_F psi".into(), r1), ("(ii) d_V psi".into(), r2)])
        }
        Identity::Equivariance => c.equivariance(),
        Identity::SigmaGlInvariance => c.sigma_gl(),
        Identity::Holomorphicity => c.holomorphicity(),
        Identity::Intertwiner => c.intertwiner(),
    }
}

fn d(forms: &Forms) -> LinearOperator {
    forms.d_operator(DPart::Full)
}

/// `phi_{q,l} - A_j(sigma) phi_{q,l-1} - d Lambda^{(j)}_{q,l-1} - sign * metric`.
fn recursion_residual(forms: &Forms, j: usize, ell: i64, metric: &MixedForm, sign: i64) -> Result<MixedForm> {
    let mut r = forms.phi_ql(ell)? - forms.a_sigma(j).apply(&forms.phi_ql(ell - 1)?);
    r = r - d(forms).apply(&forms.lambda_form(j, ell - 1)?);
    r.add_scaled(metric, &Scalar::from_int(-sign));
    Ok(r)
}

/// The recursion residual with the metric term added with a `+` sign.
pub fn recursion_residual_plus_sign(params: SpaceParams, ell: usize, j: usize) -> Result<MixedForm> {
    let forms = Forms::new(params);
    let metric = forms.recursion_metric_term(j, ell as i64)?;
    recursion_residual(&forms, j, ell as i64, &metric, 1)
}

/// All words in `1..=n` of length `ell`, lexicographic.
pub fn input_words(n: usize, ell: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..ell {
        out = out.into_iter().flat_map(|w| (1..=n as u8).map(move |c| [w.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Invertible rational test matrices in `GL_n(Q)`.
pub fn test_matrices(n: usize) -> Vec<Vec<Vec<Rational>>> {
    let upper = (0..n).map(|i| (0..n).map(|j| rat(i64::from(j >= i), 1)).collect()).collect();
    let diag = (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(if i % 2 == 0 { 2 } else { -3 }, 1) } else { rat(0, 1) }).collect())
        .collect();
    let mixed = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i, j) {
                    _ if i == j => rat(1, 2),
                    _ if j + 1 == i => rat(-1, 1),
                    _ if j == (i + 2) % n => rat(1, 3),
                    _ => rat(0, 1),
                })
                .collect()
        })
        .collect();
    vec![upper, diag, mixed]
}

struct Checker<'a> {
    f: &'a Forms,
    req: &'a Request,
}

impl Checker<'_> {
    fn ell(&self) -> i64 {
        self.req.ell as i64
    }

    fn js(&self) -> Result<Vec<usize>> {
        let ell = self.req.ell;
        if ell == 0 {
            return Err(Error::InvalidInput(format!("{} needs l >= 1", self.req.identity)));
        }
        match self.req.j {
            Some(j) if (1..=ell).contains(&j) => Ok(vec![j]),
            Some(j) => Err(Error::InvalidInput(format!("j = {j} outside 1..={ell}"))),
            None => Ok((1..=ell).collect()),
        }
    }

    fn per_j(&self, f: impl Fn(usize) -> Result<Vec<(String, MixedForm)>>) -> Result<Vec<(String, MixedForm)>> {
        let mut out = Vec::new();
        for j in self.js()? {
            out.extend(f(j)?);
        }
        Ok(out)
    }

    fn closedness(&self) -> Result<Vec<(String, MixedForm)>> {
        let f = self.f;
        let parts = [("d'_F", DPart::FPrime), ("d''_F", DPart::FDoublePrime), ("d_V", DPart::V), ("d", DPart::Full)];
        let weil = f.d_f_from_weil()?.minus(&f.d_f_prime()).minus(&f.d_f_double_prime());
        let mut out = Vec::new();
        for w in input_words(self.req.params.n, self.req.ell) {
            let phi = f.phi(&w)?;
            for (name, part) in parts {
                out.push((format!("{name} phi({w:?})"), f.d_operator(part).apply(&phi)));
            }
            out.push((format!("d_F via omega, phi({w:?})"), weil.apply(&phi)));
        }
        Ok(out)
    }

    fn kprime(&self) -> Result<Vec<(String, MixedForm)>> {
        let f = self.f;
        let params = self.req.params;
        let n = params.n as u8;
        let shift = Scalar::ratio(params.m() as i64, 2);
        let words = input_words(params.n, self.req.ell);
        let phis: Vec<MixedForm> = words.iter().map(|w| f.phi(w)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        if params.n == 1 {
            let ops = params.positive().map(|a| z_mul(a, 1).compose(&z_del(a, 1))).collect();
            let k = Scalar::from_int((params.q + self.req.ell) as i64);
            out.push(("K'1".into(), LinearOperator::sum("", ops).apply(&phis[0]) - phis[0].scale(&k)));
        }
        for j in 1..=n {
            for k in 1..=n {
                let op = omega_kprime(&params, j, k)?;
                for (w, phi) in words.iter().zip(&phis) {
                    let mut r = op.apply(phi);
                    for (pos, &c) in w.iter().enumerate() {
                        if c == j {
                            let mut moved = w.clone();
                            moved[pos] = k;
                            r = r - f.phi(&moved)?;
                        }
                    }
                    if j == k {
                        r.add_scaled(phi, &-&shift);
                    }
                    out.push((format!("k'_({j},{k}) on {w:?}"), r));
                }
            }
        }
        Ok(out)
    }

    /// Corrected constants: `{d''_F, h'_j} phi_{q,l-1} = -i N A_j` and
    /// `{d_V, h'_j} phi_{q,l-1} = -i N (B_j + C^-_j)` with `N = p + q + l - 2`.
    fn lemma3c(&self, j: usize) -> Result<Vec<(String, MixedForm)>> {
        let f = self.f;
        let ell = self.ell();
        let phi = f.phi_ql(ell - 1)?;
        let hp = f.h_prime(j);
        let n = (self.req.params.p + self.req.params.q) as i64 + ell - 2;
        let i_n = Scalar::from_parts(rat(n, 1), 1, 0, 0)?;
        let anti = |op: LinearOperator| LinearOperator::anticommutator(&op, &hp).apply(&phi);
        let r1 = anti(f.d_f_double_prime()) + f.term_a(j, ell)?.scale(&i_n);
        let bc = f.term_b(j, ell)? + f.term_c(j, ell, MetricMode::Minus)?;
        let r2 = anti(f.d_v()) + bc.scale(&i_n);
        let r3 = anti(f.d_f_prime());
        Ok(vec![
            (format!("(i) j={j}"), r1),
            (format!("(ii) j={j}"), r2),
            (format!("(iii) j={j}"), r3),
        ])
    }

    /// `4 pi {d''_F, h'_j}` and `{d_V, h'_j}` as operators on a spanning set.
    fn lemma3b(&self) -> Result<Vec<(String, MixedForm)>> {
        let f = self.f;
        let params = self.req.params;
        let vars: Vec<u8> = params.all().collect();
        let mut monos = vec![FockMonomial::one()];
        for &a in &vars {
            monos.push(FockMonomial::var(a, 1));
            for &b in vars.iter().filter(|&&b| b >= a) {
                monos.push(FockMonomial::var(a, 1).times_var(b, 1));
            }
        }
        let om = params.omegas();
        let mut exts = vec![ExteriorMonomial::one()];
        for (i, &g) in om.iter().enumerate() {
            exts.push(ExteriorMonomial::from_product(&[g]).unwrap().1);
            for &h in &om[i + 1..] {
                exts.push(ExteriorMonomial::from_product(&[g, h]).unwrap().1);
            }
        }
        let words = (0..=self.req.ell).flat_map(|l| {
            let mut ws = vec![vec![]];
            for _ in 0..l {
                ws = ws.into_iter().flat_map(|w: Vec<u8>| vars.iter().map(move |&v| [w.clone(), vec![v]].concat())).collect();
            }
            ws
        });
        let words: Vec<Vec<u8>> = words.collect();
        let js = match self.req.j {
            Some(j) => vec![j],
            None => (1..=self.req.ell + 1).collect(),
        };
        let four_pi = Scalar::from_parts(rat(4, 1), 0, 0, 1)?;
        let mut out = Vec::new();
        for j in js {
            let hp = f.h_prime(j);
            let lhs1 = LinearOperator::anticommutator(&f.d_f_double_prime(), &hp).scaled(four_pi.clone());
            let lhs2 = LinearOperator::anticommutator(&f.d_v(), &hp);
            let mut t1 = Vec::new();
            for &(a, mu) in &om {
                t1.push(insert_letter(j, mu).compose(&z_mul(mu, 1)).compose(&z_del(a, 1)).compose(&z_mul(a, 1)));
            }
            let mut t2 = Vec::new();
            for mu in params.negative() {
                for nu in params.negative() {
                    t2.push(insert_letter(j, nu).compose(&derivation_neg(mu, nu)).compose(&z_mul(mu, 1)));
                }
            }
            let rhs1 = LinearOperator::sum("", t1).minus(&LinearOperator::sum("", t2));
            let mut s1 = Vec::new();
            for &(a, mu) in &om {
                s1.push(insert_letter(j, mu).compose(&rho(&params, a, mu)).compose(&z_del(a, 1)));
            }
            let mut s2 = Vec::new();
            for a in params.positive() {
                for b in params.positive() {
                    s2.push(insert_letter(j, a).compose(&derivation_pos(a, b)).compose(&z_del(b, 1)));
                }
            }
            let rhs2 = LinearOperator::sum("", s1).plus(&LinearOperator::sum("", s2));
            let (op1, op2) = (lhs1.minus(&rhs1), lhs2.minus(&rhs2));
            for m in &monos {
                for e in &exts {
                    for w in &words {
                        if j > w.len() + 1 {
                            continue;
                        }
                        let b = Basis::new(m.clone(), e.clone(), w.clone());
                        out.push((format!("(i) j={j} on {b:?}"), op1.on_basis(&b)));
                        out.push((format!("(ii) j={j} on {b:?}"), op2.on_basis(&b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `psi_{q,l} + (1/2) sum_j Lambda^{(j)}_{q,l-1}`.
    fn lowering_primitive(&self) -> Result<MixedForm> {
        let mut prim = self.f.psi(self.ell())?;
        for j in 1..=self.req.ell {
            prim.add_scaled(&self.f.lambda_form(j, self.ell() - 1)?, &Scalar::ratio(1, 2));
        }
        Ok(prim)
    }

    fn equivariance(&self) -> Result<Vec<(String, MixedForm)>> {
        let ell = self.req.ell;
        let mut out = Vec::new();
        for a in 0..ell {
            for b in a + 1..ell {
                let s = Perm::transposition(ell, a, b);
                for w in input_words(self.req.params.n, ell) {
                    let lhs = self.f.phi(&s.act(&w))?;
                    let rhs = self.f.phi(&w)?.map_terms(|t| {
                        MixedForm::term(Basis::new(t.fock.clone(), t.ext.clone(), s.act(&t.word)), Scalar::one())
                    });
                    out.push((format!("s=({} {}) on {w:?}", a + 1, b + 1), lhs - rhs));
                }
            }
        }
        Ok(out)
    }

    /// `sigma((a^{-1} eps)_f)(x a) = sigma(eps_f)(x)`, on words and after `pi_[lambda]`.
    fn sigma_gl(&self) -> Result<Vec<(String, MixedForm)>> {
        let params = self.req.params;
        let n = params.n;
        let shape = match &self.req.lambda {
            Some(l) => l.clone(),
            None if self.req.ell == 0 => Partition::empty(),
            None => Partition::new(vec![self.req.ell])?,
        };
        let proj = harmonic_schur_projector(&shape, &params)?;
        let unit = |i: u8| -> Vec<Rational> { (1..=n as u8).map(|k| rat(i64::from(k == i), 1)).collect() };
        let mut out = Vec::new();
        for (ai, a) in test_matrices(n).into_iter().enumerate() {
            let ainv = invert(&a).ok_or_else(|| Error::Degenerate("singular test matrix".into()))?;
            for f in semistandard_fillings(&shape, n) {
                let word = filling_word(&f);
                let moved: Vec<Vec<Rational>> =
                    word.iter().map(|&c| (0..n).map(|j| ainv[j][c as usize - 1].clone()).collect()).collect();
                let lhs = substitute_columns(&sigma_word(&params, &moved)?, &a);
                let rhs = sigma_word(&params, &word.iter().map(|&c| unit(c)).collect::<Vec<_>>())?;
                out.push((format!("a{ai} f={f}"), &lhs - &rhs));
                let pl = project_tensor_slot(&lhs, &proj)?;
                let pr = project_tensor_slot(&rhs, &proj)?;
                out.push((format!("a{ai} f={f} harmonic"), pl - pr));
            }
        }
        Ok(out)
    }

    fn holomorphicity(&self) -> Result<Vec<(String, MixedForm)>> {
        let f = self.f;
        let ell = self.req.ell;
        let shape = match &self.req.lambda {
            Some(l) => l.clone(),
            None if ell == 0 => Partition::empty(),
            None => Partition::new(vec![ell])?,
        };
        if shape.size() != ell || shape.length() > 1 {
            return Err(Error::InvalidInput(format!("holomorphicity needs lambda = ({ell}), got {shape}")));
        }
        let proj: ProjectorMatrix = harmonic_schur_projector(&shape, &self.req.params)?;
        let pi = |x: &MixedForm| project_tensor_slot(x, &proj);
        let lower = f.lowering()?;
        let metric = pi(&f.lowering_metric_term(ell as i64, MetricMode::Full)?)?;
        let exact = lower.apply(&pi(&f.phi_ql(ell as i64)?)?) - d(f).apply(&pi(&self.lowering_primitive()?)?);
        let full = &exact + &metric;
        Ok(vec![
            ("pi A(f) phi_{q,l-2}".into(), metric),
            ("omega(L) pi phi - d pi(primitive)".into(), exact),
            ("omega(L) pi phi - d pi(primitive) + pi A(f) term".into(), full),
        ])
    }

    /// `D (phi_0 (x) 1)` and `T_l(w) phi_{nq,0}` through the intertwiner.
    fn intertwiner(&self) -> Result<Vec<(String, MixedForm)>> {
        let params = self.req.params;
        let lift = |alpha: u8, i: u8| intertwine_atom(Atom::new(AtomKind::XMinusD, alpha, i), &params);
        let mut d_op = LinearOperator::identity();
        for i in params.columns() {
            for mu in params.negative() {
                let terms =
                    params.positive().map(|a| Ok(wedge_left(a, mu).compose(&lift(a, i)?))).collect::<Result<Vec<_>>>()?;
                d_op = d_op.compose(&LinearOperator::sum("", terms));
            }
        }
        let nq = (params.n * params.q) as i32;
        let vacuum = d_op.scaled(Scalar::sqrt2_pow(-nq)).apply(&MixedForm::unit());
        let phi0 = self.f.phi_nq0();
        let mut out = vec![("D(phi_0 (x) 1)".into(), &vacuum - &phi0)];
        let half = Scalar::ratio(1, 2);
        for w in input_words(params.n, self.req.ell) {
            let mut t = LinearOperator::identity();
            for &i in &w {
                let terms =
                    params.positive().map(|a| Ok(insert_letter(1, a).compose(&lift(a, i)?))).collect::<Result<Vec<_>>>()?;
                t = t.compose(&LinearOperator::sum("", terms).scaled(half.clone()));
            }
            out.push((format!("T_l({w:?}) phi_nq0"), t.apply(&vacuum) - self.f.phi(&w)?));
        }
        Ok(out)
    }
}
