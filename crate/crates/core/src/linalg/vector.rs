use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::util::gcd_all;
use crate::{Error, Result};

/// An exact lattice point of fixed ambient rank. Arithmetic never
/// overflows: coordinates are arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    coords: Vec<BigInt>,
}

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        IntVector {
            coords: vec![BigInt::zero(); rank],
        }
    }

    /// Standard basis vector e_i.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = BigInt::from(1);
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn check_rank(&self, expected: usize) -> Result<()> {
        if self.rank() != expected {
            return Err(Error::RankMismatch {
                expected,
                got: self.rank(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// True iff self ≤ other in every coordinate.
    pub fn le_componentwise(&self, other: &IntVector) -> bool {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// The vector divided by the gcd of its entries. Errors on the zero
    /// vector, which has no primitive form.
    pub fn primitive(&self) -> Result<IntVector> {
        let g = gcd_all(&self.coords);
        if g.is_zero() {
            return Err(Error::ZeroVectorPrimitive);
        }
        Ok(IntVector {
            coords: self.coords.iter().map(|c| c / &g).collect(),
        })
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Parses a comma-separated coordinate list, e.g. `2,1,0`.
    pub fn parse(text: &str) -> Result<IntVector> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntVector { coords })
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        IntVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        IntVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

// Vectors serialise as JSON arrays of decimal integer strings so that
// arbitrary-precision coordinates survive any JSON reader.
impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        // Accept decimal strings (lossless at any size) and plain integers
        // (convenient in hand-written files).
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Int(i64),
            Text(String),
        }
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntVector;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers or decimal integer strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<IntVector, A::Error> {
                let mut coords = Vec::new();
                while let Some(c) = seq.next_element::<Coord>()? {
                    coords.push(match c {
                        Coord::Int(v) => BigInt::from(v),
                        Coord::Text(s) => s.parse::<BigInt>().map_err(de::Error::custom)?,
                    });
                }
                Ok(IntVector { coords })
            }
        }
        deserializer.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_by_gcd() {
        let v = IntVector::from_i64(&[4, 6]);
        assert_eq!(v.primitive().unwrap(), IntVector::from_i64(&[2, 3]));
        let w = IntVector::from_i64(&[1, 0]);
        assert_eq!(w.primitive().unwrap(), w);
    }

    #[test]
    fn primitive_rejects_zero() {
        assert_eq!(
            IntVector::from_i64(&[0, 0]).primitive(),
            Err(Error::ZeroVectorPrimitive)
        );
    }

    #[test]
    fn json_round_trip_uses_strings() {
        let v = IntVector::from_i64(&[12, -3, 0]);
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"["12","-3","0"]"#);
        let back: IntVector = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn parse_accepts_parenthesised_lists() {
        assert_eq!(
            IntVector::parse("(2, 1, 0)").unwrap(),
            IntVector::from_i64(&[2, 1, 0])
        );
        assert_eq!(IntVector::parse("5,7").unwrap(), IntVector::from_i64(&[5, 7]));
    }
}
