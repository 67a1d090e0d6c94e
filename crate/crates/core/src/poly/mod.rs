//! Sparse polynomial arithmetic in the monoid semirings N[C] and Z[C],
//! ideals with explicit membership certificates, and the monomial shift
//! that moves mixed-support polynomials into Z[C].

mod ideal;
mod shift;

pub use ideal::{
    bounded_ideal_membership, check_nt_witness, validate_nt_witness, Ideal, IdealMembership,
    MembershipCertificate, NtWitness,
};
pub use shift::{hilbert_generated, shift_into};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntVector;
use crate::monoid::AffineMonoid;
use crate::{Error, Result};

/// Coefficient domain of a sparse polynomial: N[C] (all coefficients ≥ 1)
/// or Z[C].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Naturals,
    Integers,
}

impl Domain {
    fn join(self, other: Domain) -> Domain {
        if self == Domain::Integers || other == Domain::Integers {
            Domain::Integers
        } else {
            Domain::Naturals
        }
    }
}

/// A sparse polynomial: a finite map from exponent vectors in N₀ⁿ to
/// nonzero coefficients, canonically ordered by lexicographic exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePoly {
    rank: usize,
    domain: Domain,
    terms: BTreeMap<IntVector, BigInt>,
}

impl SparsePoly {
    pub fn zero(rank: usize, domain: Domain) -> Self {
        SparsePoly {
            rank,
            domain,
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1 = x^0.
    pub fn one(rank: usize, domain: Domain) -> Self {
        Self::monomial(BigInt::one(), IntVector::zero(rank), domain).expect("1 is valid")
    }

    pub fn monomial(coeff: BigInt, exponent: IntVector, domain: Domain) -> Result<Self> {
        let rank = exponent.rank();
        if !exponent.is_nonnegative() {
            return Err(Error::Precondition {
                what: "SparsePoly",
                detail: format!("exponent {exponent} must be nonnegative"),
            });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            if domain == Domain::Naturals && coeff.is_negative() {
                return Err(Error::NaturalsDomain(coeff.to_string()));
            }
            terms.insert(exponent, coeff);
        }
        Ok(SparsePoly {
            rank,
            domain,
            terms,
        })
    }

    pub fn from_terms<I>(rank: usize, domain: Domain, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IntVector, BigInt)>,
    {
        let mut out = Self::zero(rank, domain);
        for (e, c) in terms {
            e.check_rank(rank)?;
            out = out.checked_add_term(&e, &c)?;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &IntVector) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn exponents(&self) -> impl Iterator<Item = &IntVector> {
        self.terms.keys()
    }

    /// Reinterprets the polynomial over Z[C]; always safe.
    pub fn into_integers(mut self) -> SparsePoly {
        self.domain = Domain::Integers;
        self
    }

    /// Checks all coefficients are ≥ 1 and reinterprets over N[C].
    pub fn try_into_naturals(mut self) -> Result<SparsePoly> {
        if let Some(c) = self.terms.values().find(|c| c.is_negative()) {
            return Err(Error::NaturalsDomain(c.to_string()));
        }
        self.domain = Domain::Naturals;
        Ok(self)
    }

    fn checked_add_term(mut self, exponent: &IntVector, coeff: &BigInt) -> Result<SparsePoly> {
        if coeff.is_zero() {
            return Ok(self);
        }
        if !exponent.is_nonnegative() {
            return Err(Error::Precondition {
                what: "SparsePoly",
                detail: format!("exponent {exponent} must be nonnegative"),
            });
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        let now_zero = entry.is_zero();
        let now_negative = entry.is_negative();
        if now_zero {
            self.terms.remove(exponent);
        } else if self.domain == Domain::Naturals && now_negative {
            return Err(Error::NaturalsDomain(
                self.terms.get(exponent).unwrap().to_string(),
            ));
        }
        Ok(self)
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        other.check_rank(self.rank)?;
        let mut out = self.clone();
        out.domain = self.domain.join(other.domain);
        for (e, c) in &other.terms {
            out = out.checked_add_term(e, c)?;
        }
        Ok(out)
    }

    /// Subtraction, always over the integers.
    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        other.check_rank(self.rank)?;
        let mut out = self.clone().into_integers();
        for (e, c) in &other.terms {
            out = out.checked_add_term(e, &-c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        other.check_rank(self.rank)?;
        let mut out = SparsePoly::zero(self.rank, self.domain.join(other.domain));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out = out.checked_add_term(&(e1 + e2), &(c1 * c2))?;
            }
        }
        Ok(out)
    }

    /// Scalar multiple. In the naturals domain k must be ≥ 1.
    pub fn scale(&self, k: &BigInt) -> Result<SparsePoly> {
        if self.domain == Domain::Naturals && *k < BigInt::one() {
            return Err(Error::NaturalsDomain(k.to_string()));
        }
        if k.is_zero() {
            return Ok(SparsePoly::zero(self.rank, self.domain));
        }
        Ok(SparsePoly {
            rank: self.rank,
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * k))
                .collect(),
        })
    }

    /// Multiplication by the monomial x^gamma.
    pub fn shift_exponents(&self, gamma: &IntVector) -> Result<SparsePoly> {
        gamma.check_rank(self.rank)?;
        Ok(SparsePoly {
            rank: self.rank,
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + gamma, c.clone()))
                .collect(),
        })
    }

    /// True iff self − other is coefficientwise nonnegative.
    pub fn dominates(&self, other: &SparsePoly) -> bool {
        other
            .terms
            .iter()
            .all(|(e, c)| &self.coeff(e) >= c)
    }

    /// A crude size measure: total coefficient mass plus total degree mass.
    pub fn size(&self) -> u64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(e, c)| {
                let coeff = c.abs().to_u64().unwrap_or(u64::MAX / 4);
                let deg: u64 = e
                    .coords()
                    .iter()
                    .map(|x| x.to_u64().unwrap_or(u64::MAX / 8))
                    .sum();
                coeff.saturating_add(deg)
            })
            .fold(0u64, |a, b| a.saturating_add(b))
    }

    fn check_rank(&self, expected: usize) -> Result<()> {
        if self.rank != expected {
            return Err(Error::RankMismatch {
                expected,
                got: self.rank,
            });
        }
        Ok(())
    }

    /// Parses the text format `2*x^(1,1) + 1*x^(2,0)`; bare integers are
    /// constants, and `-` may start a term's coefficient.
    pub fn parse(text: &str, rank: usize, domain: Domain) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(rank, domain);
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(out);
        }
        for raw in split_terms(text) {
            let t = raw.trim();
            if t.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let (coeff_str, exp_str) = match t.split_once('*') {
                Some((c, x)) => (c.trim(), Some(x.trim())),
                None => {
                    if t.contains('x') {
                        ("1", Some(t))
                    } else {
                        (t, None)
                    }
                }
            };
            let coeff: BigInt = coeff_str
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient {coeff_str:?}: {e}")))?;
            let exponent = match exp_str {
                None => IntVector::zero(rank),
                Some(x) => {
                    let inner = x
                        .strip_prefix("x^(")
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("bad monomial {x:?}")))?;
                    let v = IntVector::parse(inner)?;
                    v.check_rank(rank)?;
                    v
                }
            };
            if domain == Domain::Naturals && coeff.is_negative() {
                return Err(Error::NaturalsDomain(coeff.to_string()));
            }
            out = out.checked_add_term(&exponent, &coeff)?;
        }
        Ok(out)
    }

    /// JSON form `[[coeff, [e1,...,en]], ...]` with decimal-string entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    serde_json::json!([c.to_string(), serde_json::to_value(e).unwrap()])
                })
                .collect(),
        )
    }
}

/// Splits on `+` separators between terms, keeping a leading `-` attached
/// to its coefficient.
fn split_terms(text: &str) -> Vec<String> {
    text.split('+').map(|s| s.to_string()).collect()
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*x^{e}"))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// True iff every exponent of f lies in the generated monoid.
pub fn support_in(m: &AffineMonoid, f: &SparsePoly) -> bool {
    f.exponents().all(|e| m.member(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn poly(text: &str, rank: usize, domain: Domain) -> SparsePoly {
        SparsePoly::parse(text, rank, domain).unwrap()
    }

    #[test]
    fn distributes_monomial_multiplication() {
        let f = poly("1*x^(1,0) + 2*x^(0,1)", 2, Domain::Naturals);
        let g = poly("1*x^(1,0)", 2, Domain::Naturals);
        let h = f.mul(&g).unwrap();
        assert_eq!(h, poly("1*x^(2,0) + 2*x^(1,1)", 2, Domain::Naturals));
    }

    #[test]
    fn addition_with_zero_is_identity() {
        let f = poly("3*x^(1,2)", 2, Domain::Naturals);
        let z = SparsePoly::zero(2, Domain::Naturals);
        assert_eq!(f.add(&z).unwrap(), f);
    }

    #[test]
    fn integer_cancellation_drops_terms() {
        let f = poly("1*x^(1,0)", 2, Domain::Integers);
        let d = f.sub(&f).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn naturals_domain_rejects_negative_coefficients() {
        assert!(matches!(
            SparsePoly::parse("-1*x^(1,0)", 2, Domain::Naturals),
            Err(Error::NaturalsDomain(_))
        ));
        let f = poly("1*x^(1,0)", 2, Domain::Naturals);
        assert!(matches!(
            f.scale(&BigInt::from(-2)),
            Err(Error::NaturalsDomain(_))
        ));
    }

    #[test]
    fn naturals_closed_under_add_and_mul() {
        let f = poly("2*x^(1,1) + 1*x^(2,0)", 2, Domain::Naturals);
        let g = poly("1*x^(0,1)", 2, Domain::Naturals);
        assert_eq!(f.add(&g).unwrap().domain(), Domain::Naturals);
        assert_eq!(f.mul(&g).unwrap().domain(), Domain::Naturals);
    }

    #[test]
    fn display_parse_round_trip() {
        let f = poly("2*x^(1,1) + 1*x^(2,0)", 2, Domain::Naturals);
        let text = f.to_string();
        assert_eq!(text, "2*x^(1,1) + 1*x^(2,0)");
        assert_eq!(SparsePoly::parse(&text, 2, Domain::Naturals).unwrap(), f);
        let g = poly("1*x^(1,0) + -3*x^(0,1)", 2, Domain::Integers);
        assert_eq!(SparsePoly::parse(&g.to_string(), 2, Domain::Integers).unwrap(), g);
    }

    #[test]
    fn parse_constants() {
        let f = poly("5", 1, Domain::Naturals);
        assert_eq!(f.coeff(&iv(&[0])), BigInt::from(5));
    }

    #[test]
    fn support_in_examples() {
        let m = AffineMonoid::new(2, &[iv(&[1, 1])]).unwrap();
        assert!(support_in(&m, &poly("3*x^(2,2)", 2, Domain::Naturals)));
        assert!(!support_in(&m, &poly("1*x^(1,0)", 2, Domain::Naturals)));
        assert!(support_in(&m, &SparsePoly::zero(2, Domain::Naturals)));
    }
}
