//! Exact scalars of the form `sum_k (a + b i + c sqrt2 + d i sqrt2) pi^k`.
//!
//! Every coefficient that appears in the Fock-model formulas lives in the
//! Laurent ring `Q(i, sqrt2)[pi, 1/pi]`, so residuals can be compared with zero
//! exactly instead of up to a tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Canonical arbitrary-precision fraction.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n / d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients of `1, i, sqrt2, i sqrt2`.
pub type Quad = [Rational; 4];

fn quad_zero() -> Quad {
    [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()]
}

fn quad_is_zero(q: &Quad) -> bool {
    q.iter().all(Zero::is_zero)
}

fn quad_mul(x: &Quad, y: &Quad) -> Quad {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    let two = rat(2, 1);
    // basis products: i*i = -1, s*s = 2, i*s = is, s*is = 2i, is*is = -2
    let one_part = a * e - b * f + &two * (c * g) - &two * (d * h);
    let i_part = a * f + b * e + &two * (c * h) + &two * (d * g);
    let s_part = a * g + c * e - b * h - d * f;
    let is_part = a * h + d * e + b * g + c * f;
    [one_part, i_part, s_part, is_part]
}

/// Element of `Q(i, sqrt2)[pi, 1/pi]`, stored sparsely by power of pi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, Quad>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_quad(0, [r, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// Single term `quad * pi^pi_exp`.
    pub fn from_quad(pi_exp: i32, quad: Quad) -> Self {
        let mut terms = BTreeMap::new();
        if !quad_is_zero(&quad) {
            terms.insert(pi_exp, quad);
        }
        Scalar { terms }
    }

    /// `r * i^i_pow * sqrt2^sqrt2_pow * pi^pi_pow` with `i_pow` in 0..4 and
    /// `sqrt2_pow` in 0..2.
    pub fn from_parts(r: Rational, i_pow: u32, sqrt2_pow: u32, pi_pow: i32) -> Result<Self> {
        if i_pow > 3 || sqrt2_pow > 1 {
            return Err(Error::InvalidInput(format!(
                "scalar parts out of range: i^{i_pow}, sqrt2^{sqrt2_pow}"
            )));
        }
        let (slot, sign) = match (i_pow, sqrt2_pow) {
            (0, 0) => (0, 1),
            (1, 0) => (1, 1),
            (2, 0) => (0, -1),
            (3, 0) => (1, -1),
            (0, 1) => (2, 1),
            (1, 1) => (3, 1),
            (2, 1) => (2, -1),
            _ => (3, -1),
        };
        let mut q = quad_zero();
        q[slot] = if sign > 0 { r } else { -r };
        Ok(Self::from_quad(pi_pow, q))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_quad(0, [Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()])
    }

    /// `pi^k`.
    pub fn pi_pow(k: i32) -> Self {
        Self::from_quad(k, [Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()])
    }

    /// `2^(k/2)` for any integer `k`.
    pub fn sqrt2_pow(k: i32) -> Self {
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let base = if half >= 0 {
            rat(1i64 << half, 1)
        } else {
            rat(1, 1i64 << (-half))
        };
        let mut q = quad_zero();
        q[if odd { 2 } else { 0 }] = base;
        Self::from_quad(0, q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero coefficient quadruples by ascending power of pi.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Quad)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    /// The plain rational value, if this scalar is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, q) = self.terms.iter().next().unwrap();
                (*k == 0 && q[1].is_zero() && q[2].is_zero() && q[3].is_zero()).then(|| q[0].clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, q)| (*k, [&q[0] * r, &q[1] * r, &q[2] * r, &q[3] * r]))
            .collect();
        Scalar { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Scalar::one(), |acc, _| &acc * self)
    }

    fn add_quad(&mut self, k: i32, q: &Quad) {
        let slot = self.terms.entry(k).or_insert_with(quad_zero);
        for (s, x) in slot.iter_mut().zip(q.iter()) {
            *s += x;
        }
        if quad_is_zero(slot) {
            self.terms.remove(&k);
        }
    }

    /// Row layout used in JSON: `[pi_exp, a_num, a_den, b_num, b_den, ...]`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, q)| {
                let mut row = vec![Value::from(*k)];
                for r in q {
                    row.push(bigint_json(r.numer()));
                    row.push(bigint_json(r.denom()));
                }
                Value::Array(row)
            })
            .collect();
        Value::Array(rows)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("scalar must be an array".into()))?;
        let mut out = Scalar::zero();
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == 9)
                .ok_or_else(|| Error::InvalidInput("scalar row must have 9 entries".into()))?;
            let k = row[0]
                .as_i64()
                .and_then(|k| i32::try_from(k).ok())
                .ok_or_else(|| Error::InvalidInput("bad pi exponent".into()))?;
            let mut q = quad_zero();
            for (slot, pair) in q.iter_mut().zip(row[1..].chunks(2)) {
                let n = json_bigint(&pair[0])?;
                let d = json_bigint(&pair[1])?;
                if d.is_zero() {
                    return Err(Error::InvalidInput("zero denominator".into()));
                }
                *slot = Rational::new(n, d);
            }
            out.add_quad(k, &q);
        }
        Ok(out)
    }
}

fn bigint_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn json_bigint(v: &Value) -> Result<BigInt> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidInput(format!("not an integer: {v}")))
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (k, q) in &rhs.terms {
            self.add_quad(*k, q);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self
            .terms
            .iter()
            .map(|(k, q)| (*k, [-&q[0], -&q[1], -&q[2], -&q[3]]))
            .collect();
        Scalar { terms }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (k1, q1) in &self.terms {
            for (k2, q2) in &rhs.terms {
                out.add_quad(k1 + k2, &quad_mul(q1, q2));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let units = ["", "i", "√2", "i√2"];
        let mut first = true;
        for (k, q) in &self.terms {
            for (r, unit) in q.iter().zip(units) {
                if r.is_zero() {
                    continue;
                }
                let sign = if r.is_negative() { "-" } else if first { "" } else { "+" };
                write!(f, "{sign}{}", r.abs())?;
                if !unit.is_empty() {
                    write!(f, "·{unit}")?;
                }
                if *k != 0 {
                    write!(f, "·π^{k}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}
