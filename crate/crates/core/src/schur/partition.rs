use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer partition `lambda = (b_1 >= b_2 >= ... >= b_k > 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|lambda|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows `i(lambda)`.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&b| b > c).count()).collect())
    }

    /// Boxes `(row, column)` in row-major order, 0-based.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &b)| (0..b).map(move |c| (r, c)))
            .collect()
    }

    /// All partitions of `size`, in decreasing lexicographic order.
    pub fn all_of(size: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for b in (1..=rest.min(max)).rev() {
                cur.push(b);
                rec(rest - b, b, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"b1,b2,..."`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad partition entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Filling of a Young diagram, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl Filling {
    pub fn new(shape: Partition, rows: Vec<Vec<u8>>) -> Result<Self> {
        if rows.len() != shape.length() || rows.iter().zip(shape.parts()).any(|(r, &b)| r.len() != b) {
            return Err(Error::InvalidInput(format!("filling {rows:?} does not match shape {shape}")));
        }
        Ok(Filling { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.rows[row][col]
    }

    /// Entries read row by row.
    pub fn row_reading(&self) -> Vec<u8> {
        self.rows.concat()
    }

    /// Entries read column by column, each column top to bottom.
    pub fn column_reading(&self) -> Vec<u8> {
        let conj = self.shape.conjugate();
        let mut out = Vec::with_capacity(self.shape.size());
        for (c, &h) in conj.parts().iter().enumerate() {
            for r in 0..h {
                out.push(self.rows[r][c]);
            }
        }
        out
    }

    pub fn is_semistandard(&self, n: usize) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.shape.boxes().into_iter().all(|(r, c)| r == 0 || self.rows[r - 1][c] < self.rows[r][c]);
        let range_ok = self.rows.iter().flatten().all(|&e| e >= 1 && e as usize <= n);
        rows_ok && cols_ok && range_ok
    }

    pub fn is_standard(&self) -> bool {
        let l = self.shape.size();
        let mut seen: Vec<u8> = self.row_reading();
        seen.sort_unstable();
        seen == (1..=l as u8).collect::<Vec<_>>()
            && self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self.is_semistandard(l)
    }

    /// Key used in JSON payloads: rows joined by `|`, entries by `,`.
    pub fn key(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// Standard filling: entries `1..=|lambda|`, strictly increasing along rows and columns.
pub type StandardFilling = Filling;
/// Semistandard filling: rows weakly, columns strictly increasing.
pub type SemistandardFilling = Filling;

/// Semistandard fillings with entries in `1..=n`, in lexicographic order of
/// their row readings.
pub fn semistandard_fillings(shape: &Partition, n: usize) -> Vec<SemistandardFilling> {
    let boxes = shape.boxes();
    let mut out = Vec::new();
    let mut vals = vec![0u8; boxes.len()];
    fn rec(k: usize, boxes: &[(usize, usize)], shape: &Partition, n: usize, vals: &mut Vec<u8>, out: &mut Vec<Filling>) {
        if k == boxes.len() {
            out.push(to_filling(shape, vals));
            return;
        }
        let (r, c) = boxes[k];
        let mut lo = 1u8;
        if c > 0 {
            lo = lo.max(vals[k - 1]);
        }
        if r > 0 {
            let above = index_of(shape, r - 1, c);
            lo = lo.max(vals[above] + 1);
        }
        for v in lo..=n as u8 {
            vals[k] = v;
            rec(k + 1, boxes, shape, n, vals, out);
        }
    }
    rec(0, &boxes, shape, n, &mut vals, &mut out);
    out
}

/// Standard fillings of `shape`, in lexicographic order of their row readings.
pub fn standard_fillings(shape: &Partition) -> Vec<StandardFilling> {
    let l = shape.size();
    semistandard_fillings(shape, l)
        .into_iter()
        .filter(|f| f.is_standard())
        .collect()
}

/// The filling numbering boxes `1..=|lambda|` row by row.
pub fn canonical_filling(shape: &Partition) -> StandardFilling {
    let vals: Vec<u8> = (1..=shape.size() as u8).collect();
    to_filling(shape, &vals)
}

fn index_of(shape: &Partition, r: usize, c: usize) -> usize {
    shape.parts()[..r].iter().sum::<usize>() + c
}

fn to_filling(shape: &Partition, vals: &[u8]) -> Filling {
    let mut rows = Vec::new();
    let mut k = 0;
    for &b in shape.parts() {
        rows.push(vals[k..k + b].to_vec());
        k += b;
    }
    Filling { shape: shape.clone(), rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn filling_counts() {
        assert_eq!(semistandard_fillings(&p("1,1"), 2).len(), 1);
        assert_eq!(semistandard_fillings(&p("2"), 2).len(), 3);
        assert_eq!(standard_fillings(&p("2,1")).len(), 2);
        assert_eq!(semistandard_fillings(&p("2,1"), 3).len(), 8);
        assert_eq!(semistandard_fillings(&p("1,1"), 1).len(), 0);
    }

    #[test]
    fn lexicographic_order() {
        let keys: Vec<String> = semistandard_fillings(&p("2"), 2).iter().map(Filling::key).collect();
        assert_eq!(keys, ["1,1", "1,2", "2,2"]);
        let keys: Vec<String> = standard_fillings(&p("2,1")).iter().map(Filling::key).collect();
        assert_eq!(keys, ["1,2|3", "1,3|2"]);
    }

    #[test]
    fn readings() {
        let f = Filling::new(p("2,1"), vec![vec![1, 2], vec![3]]).unwrap();
        assert_eq!(f.row_reading(), [1, 2, 3]);
        assert_eq!(f.column_reading(), [1, 3, 2]);
    }

    #[test]
    fn rejects_non_partitions() {
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap().size(), 0);
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(Partition::all_of(4).len(), 5);
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
    }
}
