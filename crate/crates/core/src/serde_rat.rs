//! Serde adapters: rationals travel as `"p/q"` / `"p"` strings.
//!
//! Integers are also accepted on input; output is always the canonical
//! lowest-terms string.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::matrix::QMatrix;
use crate::num::{parse_rat, Int, Rat};

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Str(String),
    Int(i64),
}

fn decode<E: de::Error>(r: RatRepr) -> Result<Rat, E> {
    match r {
        RatRepr::Str(s) => parse_rat(&s).ok_or_else(|| E::custom(format!("bad rational {s:?}"))),
        RatRepr::Int(i) => Ok(Rat::from_integer(Int::from(i))),
    }
}

pub mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        decode(RatRepr::deserialize(d)?)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .into_iter()
            .map(decode)
            .collect()
    }
}

pub mod vecvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        Vec::<Vec<RatRepr>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(decode).collect())
            .collect()
    }
}

pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &QMatrix, s: S) -> Result<S::Ok, S::Error> {
        super::vecvec::serialize(&m.to_rows(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QMatrix, D::Error> {
        let rows = super::vecvec::deserialize(d)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(de::Error::custom("ragged matrix"));
        }
        Ok(QMatrix::from_rows(rows))
    }
}

pub mod intvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let v = super::vec::deserialize(d)?;
        v.into_iter()
            .map(|r| {
                if r.is_integer() {
                    Ok(r.to_integer())
                } else {
                    Err(de::Error::custom("expected an integer"))
                }
            })
            .collect()
    }
}

pub mod intvecvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let v = super::vecvec::deserialize(d)?;
        v.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| {
                        if r.is_integer() {
                            Ok(r.to_integer())
                        } else {
                            Err(de::Error::custom("expected an integer"))
                        }
                    })
                    .collect()
            })
            .collect()
    }
}
