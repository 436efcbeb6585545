//! Serialization helpers and the face-count report shared by the CLI.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::IntPolynomial;

pub(crate) fn serialize_bigints<S: Serializer>(cs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(cs.len()))?;
    for c in cs {
        match c.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coeff {
    Int(i64),
    Str(String),
}

pub(crate) fn deserialize_bigints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<BigInt>;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            write!(f, "a list of integer coefficients")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some(c) = seq.next_element::<Coeff>()? {
                out.push(match c {
                    Coeff::Int(v) => BigInt::from(v),
                    Coeff::Str(s) => s.parse().map_err(de::Error::custom)?,
                });
            }
            Ok(out)
        }
    }
    d.deserialize_seq(V)
}

pub(crate) mod single {
    use super::*;

    pub fn serialize<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match c.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&c.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Coeff::deserialize(d)? {
            Coeff::Int(v) => Ok(BigInt::from(v)),
            Coeff::Str(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

/// Face numbers of a nestohedron:
/// `{"n", "f", "h", "gamma", "num_vertices"}` plus the structural flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReport {
    pub n: usize,
    pub f: IntPolynomial,
    pub h: IntPolynomial,
    pub gamma: Option<IntPolynomial>,
    #[serde(with = "single")]
    pub num_vertices: BigInt,
    #[serde(default)]
    pub chordal: bool,
    #[serde(default)]
    pub flag: bool,
}
