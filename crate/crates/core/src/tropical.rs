//! Max-plus scalars, vectors and matrices with exact rational entries.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::{parse_rat, Rat};

/// An element of `R ∪ {-∞}` with exact rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tropical {
    NegInf,
    Finite(Rat),
}

impl Tropical {
    pub fn zero() -> Self {
        Tropical::NegInf
    }

    /// The multiplicative unit, the real number 0.
    pub fn one() -> Self {
        Tropical::Finite(Rat::zero())
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, Tropical::NegInf)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Tropical::NegInf => None,
            Tropical::Finite(r) => Some(r),
        }
    }

    pub fn add(&self, other: &Tropical) -> Tropical {
        trop_add(self, other)
    }

    pub fn mul(&self, other: &Tropical) -> Tropical {
        trop_mul(self, other)
    }
}

impl From<Rat> for Tropical {
    fn from(r: Rat) -> Self {
        Tropical::Finite(r)
    }
}

impl PartialOrd for Tropical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tropical {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Tropical::NegInf, Tropical::NegInf) => Ordering::Equal,
            (Tropical::NegInf, _) => Ordering::Less,
            (_, Tropical::NegInf) => Ordering::Greater,
            (Tropical::Finite(a), Tropical::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::NegInf => write!(f, "-inf"),
            Tropical::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Tropical {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Tropical {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.trim() == "-inf" {
            return Ok(Tropical::NegInf);
        }
        parse_rat(&s)
            .map(Tropical::Finite)
            .ok_or_else(|| serde::de::Error::custom(format!("bad tropical scalar {s:?}")))
    }
}

/// Tropical sum: `max(x, y)` with `-∞` as the unit.
pub fn trop_add(x: &Tropical, y: &Tropical) -> Tropical {
    if x >= y {
        x.clone()
    } else {
        y.clone()
    }
}

/// Tropical product: `x + y`, with `-∞` absorbing.
pub fn trop_mul(x: &Tropical, y: &Tropical) -> Tropical {
    match (x, y) {
        (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a + b),
        _ => Tropical::NegInf,
    }
}

pub fn trop_sum<'a>(items: impl IntoIterator<Item = &'a Tropical>) -> Tropical {
    items
        .into_iter()
        .fold(Tropical::NegInf, |acc, x| trop_add(&acc, x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Tropical>,
}

impl TropicalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Tropical>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} tropical matrix",
                entries.len()
            )));
        }
        Ok(TropicalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Tropical>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged tropical matrix".into()));
        }
        TropicalMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Tropical {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> TropicalMatrix {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        TropicalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// The matrix with row `i` and column `j` removed; `None` for 1x1.
    pub fn minor(&self, i: usize, j: usize) -> Option<TropicalMatrix> {
        if self.rows < 2 || self.cols < 2 {
            return None;
        }
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                entries.push(self.get(r, c).clone());
            }
        }
        Some(TropicalMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        })
    }
}

/// Tropical determinant `max_σ Σ_i m[σ(i), i]`.
///
/// Dynamic programming over column subsets: `best[S]` is the optimal
/// assignment of the first `|S|` rows to the columns in `S`.
pub fn trop_det(m: &TropicalMatrix) -> Result<Tropical> {
    if m.rows != m.cols {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let l = m.rows;
    assert!(
        l < usize::BITS as usize - 1,
        "tropical determinant too large"
    );
    let mut best = vec![Tropical::NegInf; 1 << l];
    best[0] = Tropical::one();
    for mask in 0usize..(1 << l) {
        if best[mask].is_neg_inf() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == l {
            continue;
        }
        for col in (0..l).filter(|c| mask & (1 << c) == 0) {
            let cand = trop_mul(&best[mask], m.get(row, col));
            let next = mask | (1 << col);
            if cand > best[next] {
                best[next] = cand;
            }
        }
    }
    Ok(best[(1 << l) - 1].clone())
}
