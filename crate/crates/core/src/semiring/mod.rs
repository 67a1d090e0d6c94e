//! Finite commutative semirings: exhaustive validation, additive property
//! profiles, the Grothendieck ring, the bounded-above subsemiring Q_S,
//! congruence quotients of N[C], and corpus enumeration.

mod corpus;
mod grothendieck;
mod profile;
mod qsub;
mod quotient;

pub use corpus::{
    enumerate_corpus, enumerate_exhaustive, random_quotient_corpus, random_saturated_monoids,
    RandomCorpusConfig,
};
pub use grothendieck::{grothendieck, GrothendieckRing};
pub use profile::{check_diagram, profile, CyclicData, DiagramReport, ElementProfile, SadWitness};
pub use qsub::{
    check_torsion_divisibility, np_hom_exists, np_hom_witnesses, q_subsemiring, QSubsemiring,
    TorsionDivisibilityReport,
};
pub use quotient::{
    quotient, CoeffSpec, CongruencePresentation, MonoidSpec, PolySpec, PresentationSpec,
    QuotientOutcome,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::IntVector;
use crate::{Error, Result};

/// A finite commutative semiring given by explicit operation tables over
/// elements 0..order-1. Both operations are commutative and associative
/// and multiplication distributes over addition; all axioms are checked
/// exhaustively at construction. Additive or multiplicative identities are
/// not required; a unity is detected when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    order: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    unity: Option<usize>,
    /// When built as a factor of N[C]: images of the monoid generators'
    /// monomials (and of 1 = x^0).
    generator_map: Option<BTreeMap<IntVector, usize>>,
}

impl FiniteSemiring {
    /// Validates the tables exhaustively (O(order³)) and returns the
    /// semiring; the error lists every violated axiom instance.
    pub fn validate(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<FiniteSemiring> {
        let order = add.len();
        let mut violations: Vec<String> = Vec::new();
        if order == 0 {
            violations.push("empty carrier".into());
        }
        for (name, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != order {
                violations.push(format!("{name} table is not {order}x{order}"));
                continue;
            }
            for (i, row) in t.iter().enumerate() {
                if row.len() != order {
                    violations.push(format!("{name} row {i} has length {}", row.len()));
                } else if let Some(&v) = row.iter().find(|&&v| v >= order) {
                    violations.push(format!("{name} row {i} contains out-of-range value {v}"));
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::SemiringAxioms(violations));
        }

        for a in 0..order {
            for b in 0..order {
                if add[a][b] != add[b][a] {
                    violations.push(format!("addition not commutative at ({a},{b})"));
                }
                if mul[a][b] != mul[b][a] {
                    violations.push(format!("multiplication not commutative at ({a},{b})"));
                }
                for c in 0..order {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        violations.push(format!("addition not associative at ({a},{b},{c})"));
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        violations
                            .push(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        violations.push(format!(
                            "multiplication does not distribute at ({a},{b},{c})"
                        ));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::SemiringAxioms(violations));
        }

        let unity = (0..order).find(|&e| (0..order).all(|x| mul[e][x] == x));
        Ok(FiniteSemiring {
            order,
            add,
            mul,
            unity,
            generator_map: None,
        })
    }

    /// Construction that skips axiom checks; for internal callers that
    /// build tables already proven consistent (debug builds re-validate).
    pub(crate) fn from_checked_tables(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> FiniteSemiring {
        debug_assert!(Self::validate(add.clone(), mul.clone()).is_ok());
        let order = add.len();
        let unity = (0..order).find(|&e| (0..order).all(|x| mul[e][x] == x));
        FiniteSemiring {
            order,
            add,
            mul,
            unity,
            generator_map: None,
        }
    }

    pub(crate) fn set_generator_map(&mut self, map: BTreeMap<IntVector, usize>) {
        self.generator_map = Some(map);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn unity(&self) -> Option<usize> {
        self.unity
    }

    pub fn generator_map(&self) -> Option<&BTreeMap<IntVector, usize>> {
        self.generator_map.as_ref()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// n·a for n ≥ 1, by binary doubling over the addition table.
    pub fn n_times(&self, n: u64, a: usize) -> usize {
        assert!(n >= 1);
        let mut n = n;
        let mut base = a;
        let mut acc: Option<usize> = None;
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(v) => self.add(v, base),
                });
            }
            n >>= 1;
            if n == 0 {
                return acc.expect("n >= 1");
            }
            base = self.add(base, base);
        }
    }

    /// a^e for e ≥ 1 over the multiplication table.
    pub fn pow(&self, a: usize, e: u64) -> usize {
        assert!(e >= 1);
        let mut e = e;
        let mut base = a;
        let mut acc: Option<usize> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(v) => self.mul(v, base),
                });
            }
            e >>= 1;
            if e == 0 {
                return acc.expect("e >= 1");
            }
            base = self.mul(base, base);
        }
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn to_spec(&self) -> SemiringSpec {
        SemiringSpec {
            order: self.order,
            add: self.add.clone(),
            mul: self.mul.clone(),
            unity: self.unity,
        }
    }

    /// The Boolean semiring {0, 1} with 1 + 1 = 1.
    pub fn boolean() -> FiniteSemiring {
        FiniteSemiring::validate(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 1]])
            .expect("boolean tables are a semiring")
    }

    /// The ring Z/mZ viewed as a semiring.
    pub fn z_mod(m: usize) -> FiniteSemiring {
        assert!(m >= 1);
        let add = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        let mul = (0..m)
            .map(|a| (0..m).map(|b| (a * b) % m).collect())
            .collect();
        FiniteSemiring::validate(add, mul).expect("modular tables are a semiring")
    }

    /// Naturals truncated at t: {0, 1, ..., t} with saturating addition and
    /// multiplication.
    pub fn truncated_naturals(t: usize) -> FiniteSemiring {
        let m = t + 1;
        let add = (0..m)
            .map(|a| (0..m).map(|b| (a + b).min(t)).collect())
            .collect();
        let mul = (0..m)
            .map(|a| (0..m).map(|b| (a * b).min(t)).collect())
            .collect();
        FiniteSemiring::validate(add, mul).expect("truncation is a semiring")
    }
}

/// Serde-facing table form: `{order, add, mul, unity?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemiringSpec {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unity: Option<usize>,
}

impl SemiringSpec {
    pub fn build(self) -> Result<FiniteSemiring> {
        let s = FiniteSemiring::validate(self.add, self.mul)?;
        if let Some(u) = self.unity {
            if s.unity() != Some(u) {
                return Err(Error::SemiringAxioms(vec![format!(
                    "declared unity {u} is not the multiplicative identity"
                )]));
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_semiring_validates_with_unity_one() {
        let b = FiniteSemiring::boolean();
        assert_eq!(b.unity(), Some(1));
        assert_eq!(b.add(1, 1), 1);
    }

    #[test]
    fn z4_validates() {
        let z4 = FiniteSemiring::z_mod(4);
        assert_eq!(z4.unity(), Some(1));
        assert_eq!(z4.add(3, 3), 2);
        assert_eq!(z4.mul(2, 2), 0);
    }

    #[test]
    fn truncated_naturals_validate() {
        let t2 = FiniteSemiring::truncated_naturals(2);
        assert_eq!(t2.add(2, 1), 2);
        assert_eq!(t2.add(1, 1), 2);
        assert_eq!(t2.unity(), Some(1));
    }

    #[test]
    fn non_commutative_addition_is_named() {
        let err = FiniteSemiring::validate(
            vec![vec![0, 1], vec![0, 1]], // add(0,1)=1 but add(1,0)=0
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap_err();
        let Error::SemiringAxioms(violations) = err else {
            panic!("expected axiom violations")
        };
        assert!(violations
            .iter()
            .any(|v| v.contains("addition not commutative at (0,1)")));
    }

    #[test]
    fn n_times_matches_repeated_addition() {
        let t2 = FiniteSemiring::truncated_naturals(2);
        for a in t2.elements() {
            let mut acc = a;
            for n in 2..=9u64 {
                acc = t2.add(acc, a);
                assert_eq!(t2.n_times(n, a), acc);
            }
        }
    }

    #[test]
    fn spec_round_trip() {
        let z3 = FiniteSemiring::z_mod(3);
        let json = serde_json::to_string(&z3.to_spec()).unwrap();
        let spec: SemiringSpec = serde_json::from_str(&json).unwrap();
        let back = spec.build().unwrap();
        assert_eq!(back, z3);
    }
}
