use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Coset `h + b L^n`: one shift per column, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub h: Vec<Vec<Rational>>,
    pub modulus: i64,
}

/// Positive definite lattice `Z^m` with `(x, y) = x^T G y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<Rational>>,
    coset: Option<Coset>,
    pivots: Vec<Rational>,
    /// Unit lower triangular `L` with `G = L D L^T`, stored by rows.
    lower: Vec<Vec<Rational>>,
}

pub(crate) fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::InvalidInput(format!("expected an integer, got {n}"))),
        Value::String(s) => {
            let s = s.trim();
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let num: BigInt = num.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
            let den: BigInt = den.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
        _ => Err(Error::InvalidInput(format!("expected a number or rational string, got {v}"))),
    }
}

pub(crate) fn parse_matrix(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>> {
    let rows = v.as_array().ok_or_else(|| Error::InvalidInput(format!("{what} must be an array of rows")))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::InvalidInput(format!("{what} rows must be arrays")))?
                .iter()
                .map(parse_rational)
                .collect()
        })
        .collect()
}

/// `"a/b"`, or `"a"` for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact `G = L D L^T`; `None` if some leading pivot vanishes.
pub fn ldl(g: &[Vec<Rational>]) -> Option<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let m = g.len();
    let mut l = vec![vec![Rational::zero(); m]; m];
    let mut d = vec![Rational::zero(); m];
    for i in 0..m {
        let mut s = g[i][i].clone();
        for k in 0..i {
            s -= &l[i][k] * &l[i][k] * &d[k];
        }
        if s.is_zero() {
            return None;
        }
        d[i] = s;
        l[i][i] = Rational::one();
        for j in i + 1..m {
            let mut t = g[j][i].clone();
            for k in 0..i {
                t -= &l[j][k] * &l[i][k] * &d[k];
            }
            l[j][i] = t / &d[i];
        }
    }
    Some((l, d))
}

impl Lattice {
    pub fn new(gram: Vec<Vec<Rational>>, coset: Option<Coset>) -> Result<Self> {
        let m = gram.len();
        if m == 0 || gram.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("gram matrix must be square and nonempty".into()));
        }
        for i in 0..m {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("gram matrix must be symmetric".into()));
                }
            }
        }
        let (lower, pivots) =
            ldl(&gram).ok_or_else(|| Error::InvalidInput("gram matrix is not positive definite".into()))?;
        if pivots.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidInput("gram matrix is not positive definite".into()));
        }
        if let Some(c) = &coset {
            if c.modulus < 1 {
                return Err(Error::InvalidInput("coset modulus must be positive".into()));
            }
            if c.h.iter().any(|h| h.len() != m) {
                return Err(Error::InvalidInput(format!("coset shifts must have {m} coordinates")));
            }
        }
        Ok(Lattice { gram, coset, pivots, lower })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let gram = parse_matrix(v.get("gram").ok_or_else(|| Error::InvalidInput("missing \"gram\"".into()))?, "gram")?;
        let coset = match v.get("coset") {
            None | Some(Value::Null) => None,
            Some(c) => {
                let h = parse_matrix(c.get("h").ok_or_else(|| Error::InvalidInput("coset needs \"h\"".into()))?, "h")?;
                let modulus = c
                    .get("modulus")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| Error::InvalidInput("coset needs an integer \"modulus\"".into()))?;
                Some(Coset { h, modulus })
            }
        };
        Lattice::new(gram, coset)
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &[Vec<Rational>]| -> Value {
            m.iter().map(|r| r.iter().map(rational_string).collect::<Vec<_>>()).collect::<Vec<_>>().into()
        };
        let mut v = json!({ "gram": mat(&self.gram) });
        if let Some(c) = &self.coset {
            v["coset"] = json!({ "h": mat(&c.h), "modulus": c.modulus });
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn coset(&self) -> Option<&Coset> {
        self.coset.as_ref()
    }

    pub fn pivots(&self) -> &[Rational] {
        &self.pivots
    }

    pub(crate) fn lower(&self) -> &[Vec<Rational>] {
        &self.lower
    }

    /// `(x, y) = x^T G y`.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, g) in row.iter().enumerate() {
                if !g.is_zero() && !y[j].is_zero() {
                    s += &x[i] * g * &y[j];
                }
            }
        }
        s
    }

    /// Shift and modulus of column `i` (zero shift, modulus one without a coset).
    pub fn column_coset(&self, i: usize) -> Result<(Vec<Rational>, Rational)> {
        match &self.coset {
            None => Ok((vec![Rational::zero(); self.dim()], Rational::one())),
            Some(c) => {
                let h = c.h.get(i).cloned().ok_or_else(|| {
                    Error::InvalidInput(format!("coset has {} shifts, genus needs column {}", c.h.len(), i + 1))
                })?;
                Ok((h, Rational::from_integer(BigInt::from(c.modulus))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn ldl_reconstructs() {
        let g = vec![
            vec![rat(2, 1), rat(-1, 1), rat(0, 1)],
            vec![rat(-1, 1), rat(2, 1), rat(-1, 1)],
            vec![rat(0, 1), rat(-1, 1), rat(2, 1)],
        ];
        let (l, d) = ldl(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| &l[i][k] * &d[k] * &l[j][k]).sum();
                assert_eq!(s, g[i][j]);
            }
        }
        assert_eq!(d, vec![rat(2, 1), rat(3, 2), rat(4, 3)]);
    }

    #[test]
    fn rejects_indefinite() {
        let v = json!({"gram": [[1, 2], [2, 1]]});
        assert!(Lattice::from_json(&v).is_err());
        let v = json!({"gram": [[1, 0], [1, 1]]});
        assert!(Lattice::from_json(&v).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = json!({"gram": [[2, "1"], [1, 2]], "coset": {"h": [["1/2", 0]], "modulus": 1}});
        let lat = Lattice::from_json(&v).unwrap();
        assert_eq!(Lattice::from_json(&lat.to_json()).unwrap(), lat);
    }
}
