//! Builders for the Fock-model Schwartz forms and the operators used to relate
//! them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multilinear::{
    a_of_f, insert_letter, insert_metric_seq, interior, rho, wedge_left, z_del, z_mul, Basis,
    ExteriorMonomial, FockMonomial, LinearOperator, MetricMode, MixedForm, SpaceParams,
};
use crate::scalar::{rat, Rational, Scalar};
use crate::weil::{omega, LieGenerator};

/// A deliberate corruption of one printed constant, used to show that the
/// identity checks are sensitive to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mutation {
    /// `1/4pi -> 1/2pi` in `d''_F`.
    DFQuarterPi,
    /// `1/4pi -> 1/2pi` in the positive block of `A_j(sigma)`.
    SigmaPosQuarterPi,
    /// `1/4pi -> 1/2pi` in the negative block of `A_j(sigma)`.
    SigmaNegQuarterPi,
    /// Sign flip inside the positive block of `A_j(sigma)`.
    SigmaPosInnerSign,
    /// Sign flip inside the negative block of `A_j(sigma)`.
    SigmaNegInnerSign,
    /// Sign flip between the two blocks of `A_j(sigma)`.
    SigmaBlockSign,
    /// `1/4pi -> 1/2pi` in the metric term of the recursion.
    RecursionQuarterPi,
    /// `1/4pi -> 1/2pi` in the metric term of the lowering formula.
    LoweringQuarterPi,
    /// `p+q+l-1 -> p+q+l` in the denominator of `Lambda`.
    LambdaDenominator,
    /// `2(p+q-1) -> 2(p+q)` in the denominator of `psi`.
    PsiDenominator,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::DFQuarterPi,
        Mutation::SigmaPosQuarterPi,
        Mutation::SigmaNegQuarterPi,
        Mutation::SigmaPosInnerSign,
        Mutation::SigmaNegInnerSign,
        Mutation::SigmaBlockSign,
        Mutation::RecursionQuarterPi,
        Mutation::LoweringQuarterPi,
        Mutation::LambdaDenominator,
        Mutation::PsiDenominator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DFQuarterPi => "df_quarter_pi",
            Mutation::SigmaPosQuarterPi => "sigma_pos_quarter_pi",
            Mutation::SigmaNegQuarterPi => "sigma_neg_quarter_pi",
            Mutation::SigmaPosInnerSign => "sigma_pos_inner_sign",
            Mutation::SigmaNegInnerSign => "sigma_neg_inner_sign",
            Mutation::SigmaBlockSign => "sigma_block_sign",
            Mutation::RecursionQuarterPi => "recursion_quarter_pi",
            Mutation::LoweringQuarterPi => "lowering_quarter_pi",
            Mutation::LambdaDenominator => "lambda_denominator",
            Mutation::PsiDenominator => "psi_denominator",
        }
    }
}

impl std::str::FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown mutation {s:?}")))
    }
}

/// Pieces of the exterior differential `d = d'_F + d''_F + d_V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DPart {
    FPrime,
    FDoublePrime,
    V,
    Full,
}

/// `-i / 4 pi`.
pub fn minus_i_over_4pi() -> Scalar {
    Scalar::from_parts(rat(1, 4), 3, 0, -1).unwrap()
}

/// `c / pi^k` style helper: `r * pi^k`.
fn rpi(r: Rational, k: i32) -> Scalar {
    Scalar::from_parts(r, 0, 0, k).unwrap()
}

fn i_times(r: Rational, pi: i32) -> Scalar {
    Scalar::from_parts(r, 1, 0, pi).unwrap()
}

/// Form builders for one space `V` of signature `(p, q)` and genus `n`.
#[derive(Clone, Debug)]
pub struct Forms {
    pub params: SpaceParams,
    pub mutation: Option<Mutation>,
}

impl Forms {
    pub fn new(params: SpaceParams) -> Self {
        Forms { params, mutation: None }
    }

    pub fn with_mutation(params: SpaceParams, mutation: Mutation) -> Self {
        Forms { params, mutation: Some(mutation) }
    }

    fn mutated(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    /// `1/4pi`, or `1/2pi` under the given mutation.
    fn quarter_pi(&self, m: Mutation) -> Scalar {
        if self.mutated(m) {
            rpi(rat(1, 2), -1)
        } else {
            rpi(rat(1, 4), -1)
        }
    }

    fn need_genus_one(&self) -> Result<()> {
        if self.params.n != 1 {
            return Err(Error::Precondition(format!("genus one required, got n = {}", self.params.n)));
        }
        Ok(())
    }

    /// `phi_{nq,0} = 2^{-nq/2} (-i/2pi)^{nq} sum z_{a1,1}...z_{an,n} (x) omega_{a1} ^ ... ^ omega_{an} (x) 1`.
    pub fn phi_nq0(&self) -> MixedForm {
        let SpaceParams { p, q, n } = self.params;
        let nq = (n * q) as u32;
        let minus_i_over_2pi = Scalar::from_parts(rat(1, 2), 3, 0, -1).unwrap();
        let c = &Scalar::sqrt2_pow(-(nq as i32)) * &minus_i_over_2pi.pow(nq);
        let mut out = MixedForm::zero();
        // one positive index per (column, negative index) slot
        let slots = n * q;
        let mut idx = vec![1u8; slots];
        loop {
            let mut fock = FockMonomial::one();
            let mut gens = Vec::with_capacity(slots);
            for col in 0..n {
                for s in 0..q {
                    let a = idx[col * q + s];
                    fock = fock.times_var(a, col as u8 + 1);
                    gens.push((a, (p + 1 + s) as u8));
                }
            }
            if let Some((sign, ext)) = ExteriorMonomial::from_product(&gens) {
                let coeff = if sign < 0 { -&c } else { c.clone() };
                out.add_term(Basis::new(fock, ext, vec![]), coeff);
            }
            if !advance(&mut idx, p as u8) {
                break;
            }
        }
        out
    }

    /// `phi_{0,l}(eps_{i1} (x) ... (x) eps_{il}) = (-i/4pi)^l sum_beta z_{b1,i1}...z_{bl,il} (x) 1 (x) e_beta`,
    /// with `beta` running over positive indices.
    pub fn phi_0ell(&self, columns: &[u8]) -> Result<MixedForm> {
        self.check_columns(columns)?;
        let ell = columns.len();
        let c = minus_i_over_4pi().pow(ell as u32);
        let mut out = MixedForm::zero();
        let mut idx = vec![1u8; ell];
        loop {
            let mut fock = FockMonomial::one();
            for (b, col) in idx.iter().zip(columns) {
                fock = fock.times_var(*b, *col);
            }
            out.add_term(Basis::new(fock, ExteriorMonomial::one(), idx.clone()), c.clone());
            if !advance(&mut idx, self.params.p as u8) {
                break;
            }
        }
        Ok(out)
    }

    fn check_columns(&self, columns: &[u8]) -> Result<()> {
        if columns.iter().any(|&c| c == 0 || c as usize > self.params.n) {
            return Err(Error::InvalidInput(format!("input word {columns:?} uses a column outside 1..={}", self.params.n)));
        }
        Ok(())
    }

    /// `phi_{nq,l}(w) = phi_{nq,0} . phi_{0,l}(w)`.
    pub fn phi(&self, columns: &[u8]) -> Result<MixedForm> {
        Ok(self.phi_nq0().mul(&self.phi_0ell(columns)?))
    }

    /// `phi` evaluated on a linear combination of input words.
    pub fn phi_on(&self, input: &[(Vec<u8>, Rational)]) -> Result<MixedForm> {
        let mut out = MixedForm::zero();
        for (w, c) in input {
            out.add_scaled(&self.phi(w)?, &Scalar::from_rational(c.clone()));
        }
        Ok(out)
    }

    /// Genus-one `phi_{q,l}`; zero for negative `l`.
    pub fn phi_ql(&self, ell: i64) -> Result<MixedForm> {
        self.need_genus_one()?;
        if ell < 0 {
            return Ok(MixedForm::zero());
        }
        self.phi(&vec![1u8; ell as usize])
    }

    pub fn phi_0l(&self, ell: i64) -> Result<MixedForm> {
        if ell < 0 {
            return Ok(MixedForm::zero());
        }
        self.phi_0ell(&vec![1u8; ell as usize])
    }

    /// `d'_F = -4pi sum d^2/dz_{alpha j} dz_{mu j} (x) A(omega_{alpha mu})`.
    pub fn d_f_prime(&self) -> LinearOperator {
        let mut ops = Vec::new();
        for (a, mu) in self.params.omegas() {
            for j in self.params.columns() {
                ops.push(wedge_left(a, mu).compose(&z_del(a, j)).compose(&z_del(mu, j)));
            }
        }
        LinearOperator::sum("d'_F", ops).scaled(rpi(rat(-4, 1), 1))
    }

    /// `d''_F = (1/4pi) sum z_{alpha j} z_{mu j} (x) A(omega_{alpha mu})`.
    pub fn d_f_double_prime(&self) -> LinearOperator {
        let mut ops = Vec::new();
        for (a, mu) in self.params.omegas() {
            for j in self.params.columns() {
                ops.push(wedge_left(a, mu).compose(&z_mul(a, j)).compose(&z_mul(mu, j)));
            }
        }
        LinearOperator::sum("d''_F", ops).scaled(self.quarter_pi(Mutation::DFQuarterPi))
    }

    /// `d_V = sum A(omega_{alpha mu}) (x) rho(X_{alpha mu})`.
    pub fn d_v(&self) -> LinearOperator {
        let ops = self
            .params
            .omegas()
            .into_iter()
            .map(|(a, mu)| wedge_left(a, mu).compose(&rho(&self.params, a, mu)))
            .collect();
        LinearOperator::sum("d_V", ops)
    }

    pub fn d_operator(&self, part: DPart) -> LinearOperator {
        match part {
            DPart::FPrime => self.d_f_prime(),
            DPart::FDoublePrime => self.d_f_double_prime(),
            DPart::V => self.d_v(),
            DPart::Full => LinearOperator::sum("d", vec![self.d_f_prime(), self.d_f_double_prime(), self.d_v()]),
        }
    }

    /// `d_F` assembled from the Weil representation: `sum omega(X_{alpha mu}) (x) A(omega_{alpha mu})`.
    pub fn d_f_from_weil(&self) -> Result<LinearOperator> {
        let mut ops = Vec::new();
        for (a, mu) in self.params.omegas() {
            ops.push(wedge_left(a, mu).compose(&omega(LieGenerator::OP(a, mu), &self.params)?));
        }
        Ok(LinearOperator::sum("d_F", ops))
    }

    /// `h'_j = sum d/dz_alpha (x) A*(omega_{alpha mu}) (x) A_j(e_mu)`.
    pub fn h_prime(&self, j: usize) -> LinearOperator {
        let mut ops = Vec::new();
        for (a, mu) in self.params.omegas() {
            ops.push(insert_letter(j, mu).compose(&interior(a, mu)).compose(&z_del(a, 1)));
        }
        LinearOperator::sum(format!("h'_{j}"), ops)
    }

    /// `h''_j = sum z_mu (x) A*(omega_{alpha mu}) (x) A_j(e_alpha)`.
    pub fn h_double_prime(&self, j: usize) -> LinearOperator {
        let mut ops = Vec::new();
        for (a, mu) in self.params.omegas() {
            ops.push(insert_letter(j, a).compose(&interior(a, mu)).compose(&z_mul(mu, 1)));
        }
        LinearOperator::sum(format!("h''_{j}"), ops)
    }

    /// `h = sum z_mu d/dz_alpha (x) A*(omega_{alpha mu}) (x) 1`.
    pub fn h(&self) -> LinearOperator {
        let mut ops = Vec::new();
        for (a, mu) in self.params.omegas() {
            ops.push(interior(a, mu).compose(&z_mul(mu, 1)).compose(&z_del(a, 1)));
        }
        LinearOperator::sum("h", ops)
    }

    /// `p + q + l - 1`, the denominator attached to `Lambda_{q,l}`.
    pub fn lambda_denominator(&self, ell: i64) -> i64 {
        let base = (self.params.p + self.params.q) as i64 + ell - 1;
        if self.mutated(Mutation::LambdaDenominator) {
            base + 1
        } else {
            base
        }
    }

    /// `Lambda^{(j)}_{q,l} = (-i/(p+q+l-1)) h'_j phi_{q,l}`.
    pub fn lambda_form(&self, j: usize, ell: i64) -> Result<MixedForm> {
        if ell < 0 {
            return Ok(MixedForm::zero());
        }
        let den = self.lambda_denominator(ell);
        let c = Scalar::from_parts(rat(1, den), 3, 0, 0)?;
        Ok(self.h_prime(j).apply(&self.phi_ql(ell)?).scale(&c))
    }

    fn psi_coefficient(&self, extra: i64) -> Scalar {
        let mut den = 2 * ((self.params.p + self.params.q) as i64 + extra - 1);
        if self.mutated(Mutation::PsiDenominator) {
            den += 2;
        }
        Scalar::ratio(-1, den)
    }

    /// `psi_{q,l} = (-1/(2(p+q-1))) (h phi_{q,0}) . phi_{0,l}`.
    pub fn psi(&self, ell: i64) -> Result<MixedForm> {
        if ell < 0 {
            return Ok(MixedForm::zero());
        }
        let base = self.h().apply(&self.phi_ql(0)?).scale(&self.psi_coefficient(0));
        Ok(base.mul(&self.phi_0l(ell)?))
    }

    /// `psi_{q,l} = (-1/(2(p+q+l-1))) h phi_{q,l}`.
    pub fn psi_direct(&self, ell: i64) -> Result<MixedForm> {
        if ell < 0 {
            return Ok(MixedForm::zero());
        }
        Ok(self.h().apply(&self.phi_ql(ell)?).scale(&self.psi_coefficient(ell)))
    }

    /// `A_j(sigma) = i sum (d_alpha - z_alpha/4pi) A_j(e_alpha) - i sum (d_mu - z_mu/4pi) A_j(e_mu)`.
    pub fn a_sigma(&self, j: usize) -> LinearOperator {
        let one = Scalar::one();
        let neg = Scalar::from_int(-1);
        let pos_inner = if self.mutated(Mutation::SigmaPosInnerSign) { one.clone() } else { neg.clone() };
        let neg_inner = if self.mutated(Mutation::SigmaNegInnerSign) { one.clone() } else { neg.clone() };
        let block = if self.mutated(Mutation::SigmaBlockSign) { one } else { neg };
        let qp = self.quarter_pi(Mutation::SigmaPosQuarterPi);
        let qn = self.quarter_pi(Mutation::SigmaNegQuarterPi);
        let mut pos = Vec::new();
        for a in self.params.positive() {
            let inner = z_del(a, 1).plus(&z_mul(a, 1).scaled(&pos_inner * &qp));
            pos.push(insert_letter(j, a).compose(&inner));
        }
        let mut negs = Vec::new();
        for mu in self.params.negative() {
            let inner = z_del(mu, 1).plus(&z_mul(mu, 1).scaled(&neg_inner * &qn));
            negs.push(insert_letter(j, mu).compose(&inner));
        }
        let i = Scalar::i();
        LinearOperator::sum("", pos)
            .scaled(i.clone())
            .plus(&LinearOperator::sum("", negs).scaled(&i * &block))
            .renamed(format!("A_{j}(σ)"))
    }

    /// `A_j = (i/4pi) (sum z_mu (x) 1 (x) A_j(e_mu)) phi_{q,l-1}`.
    pub fn term_a(&self, j: usize, ell: i64) -> Result<MixedForm> {
        let ops = self.params.negative().map(|mu| insert_letter(j, mu).compose(&z_mul(mu, 1))).collect();
        let x = LinearOperator::sum("", ops).apply(&self.phi_ql(ell - 1)?);
        Ok(x.scale(&i_times(rat(1, 4), -1)))
    }

    /// `B_j = i sum (d_alpha phi_{q,0}) . (1 (x) 1 (x) A_j(e_alpha)) phi_{0,l-1}`.
    pub fn term_b(&self, j: usize, ell: i64) -> Result<MixedForm> {
        if ell < 1 {
            return Ok(MixedForm::zero());
        }
        let base = self.phi_ql(0)?;
        let tail = self.phi_0l(ell - 1)?;
        let mut out = MixedForm::zero();
        for a in self.params.positive() {
            out.add_assign(&z_del(a, 1).apply(&base).mul(&insert_letter(j, a).apply(&tail)));
        }
        Ok(out.scale(&Scalar::i()))
    }

    /// `C^{+/-}_j = (1/4pi) sum_k A_{jk}(f+/-) phi_{q,l-2}`.
    pub fn term_c(&self, j: usize, ell: i64, mode: MetricMode) -> Result<MixedForm> {
        let base = self.phi_ql(ell - 2)?;
        let mut out = MixedForm::zero();
        for k in 1..ell.max(1) as usize {
            out.add_assign(&insert_metric_seq(&self.params, j, k, mode).apply(&base));
        }
        Ok(out.scale(&rpi(rat(1, 4), -1)))
    }

    /// `(1/4pi) sum_k A_{jk}(f) phi_{q,l-2}`, the metric term of the recursion.
    pub fn recursion_metric_term(&self, j: usize, ell: i64) -> Result<MixedForm> {
        let base = self.phi_ql(ell - 2)?;
        let mut out = MixedForm::zero();
        for k in 1..ell.max(1) as usize {
            out.add_assign(&insert_metric_seq(&self.params, j, k, MetricMode::Full).apply(&base));
        }
        Ok(out.scale(&self.quarter_pi(Mutation::RecursionQuarterPi)))
    }

    /// `(1/4pi) A(f) phi_{q,l-2}`, the metric term of the lowering formula.
    pub fn lowering_metric_term(&self, ell: i64, mode: MetricMode) -> Result<MixedForm> {
        let base = self.phi_ql(ell - 2)?;
        Ok(a_of_f(&self.params, mode).apply(&base).scale(&self.quarter_pi(Mutation::LoweringQuarterPi)))
    }

    /// `omega(L)` for genus one.
    pub fn lowering(&self) -> Result<LinearOperator> {
        self.need_genus_one()?;
        omega(LieGenerator::Lowering, &self.params)
    }

    /// The Euler form `e_q = (-1/4pi)^k (1/k!) sum sgn(s) Omega_{s1 s2} ^ ... ^ Omega_{s(2k-1) s(2k)}`
    /// with `Omega_{mu nu} = sum_alpha omega_{alpha mu} ^ omega_{alpha nu}`; zero for odd `q`.
    pub fn euler_form(&self) -> MixedForm {
        let SpaceParams { p, q, .. } = self.params;
        if q % 2 == 1 {
            return MixedForm::zero();
        }
        let k = q / 2;
        let omega_big = |mu: u8, nu: u8| {
            let mut out = MixedForm::zero();
            for a in 1..=p as u8 {
                if let Some((s, e)) = ExteriorMonomial::from_product(&[(a, mu), (a, nu)]) {
                    out.add_term(Basis::new(FockMonomial::one(), e, vec![]), Scalar::from_int(s as i64));
                }
            }
            out
        };
        let mut total = MixedForm::zero();
        for (perm, sign) in permutations_with_sign(q) {
            let mut prod = MixedForm::unit();
            for pair in perm.chunks(2) {
                let mu = (p + 1 + pair[0]) as u8;
                let nu = (p + 1 + pair[1]) as u8;
                prod = prod.mul(&omega_big(mu, nu));
            }
            total.add_scaled(&prod, &Scalar::from_int(sign));
        }
        let fact: i64 = (1..=k as i64).product();
        let c = &rpi(rat(-1, 4), -1).pow(k as u32) * &Scalar::ratio(1, fact);
        total.scale(&c)
    }
}

/// Advances a multi-index with entries in `1..=max`; false once exhausted.
fn advance(idx: &mut [u8], max: u8) -> bool {
    for slot in idx.iter_mut().rev() {
        if *slot < max {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

/// All permutations of `0..k` with their signs.
pub(crate) fn permutations_with_sign(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        let k = used.len();
        if prefix.len() == k {
            out.push((prefix.clone(), sign));
            return;
        }
        for x in 0..k {
            if used[x] {
                continue;
            }
            let inversions = prefix.iter().filter(|&&y| y > x).count();
            used[x] = true;
            prefix.push(x);
            rec(prefix, used, if inversions % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            used[x] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], 1, &mut out);
    out
}
