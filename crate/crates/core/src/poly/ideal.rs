use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{support_in, Domain, SparsePoly};
use crate::linalg::{solve_integer, IntMatrix, IntVector};
use crate::monoid::AffineMonoid;
use crate::{Error, Result};

/// An ideal of Z[C], given by generators supported in the universe monoid.
#[derive(Debug, Clone)]
pub struct Ideal {
    universe: AffineMonoid,
    generators: Vec<SparsePoly>,
}

impl Ideal {
    pub fn new(universe: AffineMonoid, generators: Vec<SparsePoly>) -> Result<Ideal> {
        for g in &generators {
            if g.rank() != universe.ambient() {
                return Err(Error::RankMismatch {
                    expected: universe.ambient(),
                    got: g.rank(),
                });
            }
            if !support_in(&universe, g) {
                return Err(Error::Precondition {
                    what: "Ideal",
                    detail: format!("generator {g} not supported in the universe monoid"),
                });
            }
        }
        Ok(Ideal {
            universe,
            generators,
        })
    }

    pub fn universe(&self) -> &AffineMonoid {
        &self.universe
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    /// Ideal text format: the monoid header block, a line `ideal`, then
    /// one generator polynomial per line.
    pub fn to_text(&self) -> String {
        let mut out = self.universe.to_text();
        out.push_str("ideal\n");
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Ideal> {
        let mut monoid_part = String::new();
        let mut poly_lines: Vec<&str> = Vec::new();
        let mut in_ideal = false;
        for line in text.lines() {
            let t = line.trim();
            if t == "ideal" {
                in_ideal = true;
                continue;
            }
            if in_ideal {
                if !t.is_empty() {
                    poly_lines.push(t);
                }
            } else {
                monoid_part.push_str(line);
                monoid_part.push('\n');
            }
        }
        if !in_ideal {
            return Err(Error::Parse("missing `ideal` separator line".into()));
        }
        let universe = AffineMonoid::parse(&monoid_part)?;
        let generators = poly_lines
            .iter()
            .map(|l| SparsePoly::parse(l, universe.ambient(), Domain::Integers))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(universe, generators)
    }
}

/// A verified representation target = Σ f_i · h_{gen(i)}, checkable by
/// exact expansion.
#[derive(Debug, Clone)]
pub struct MembershipCertificate {
    pub target: SparsePoly,
    /// (cofactor, generator index) pairs.
    pub cofactors: Vec<(SparsePoly, usize)>,
}

impl MembershipCertificate {
    /// Re-expands the certificate and confirms the claim exactly; also
    /// checks cofactor supports stay inside the declared universe monoid.
    pub fn verify(&self, ideal: &Ideal) -> Result<()> {
        let rank = self.target.rank();
        let mut sum = SparsePoly::zero(rank, Domain::Integers);
        for (cofactor, idx) in &self.cofactors {
            let gen = ideal.generators().get(*idx).ok_or_else(|| Error::Precondition {
                what: "MembershipCertificate",
                detail: format!("generator index {idx} out of range"),
            })?;
            if !support_in(ideal.universe(), cofactor) {
                return Err(Error::Precondition {
                    what: "MembershipCertificate",
                    detail: format!("cofactor {cofactor} not supported in the universe monoid"),
                });
            }
            sum = sum.add(&cofactor.mul(gen)?)?;
        }
        let diff = sum.sub(&self.target)?;
        if !diff.is_zero() {
            return Err(Error::Precondition {
                what: "MembershipCertificate",
                detail: format!("expansion mismatch, residue {diff}"),
            });
        }
        Ok(())
    }
}

/// Outcome of the bounded membership semi-decision.
#[derive(Debug, Clone)]
pub enum IdealMembership {
    Certificate(MembershipCertificate),
    /// The support cap may simply be too small; never a claimed "no".
    Undecided,
}

/// Searches for cofactors supported in `support_cap` with
/// f = Σ f_i h_i, by solving the exact integer linear system column-wise.
pub fn bounded_ideal_membership(
    f: &SparsePoly,
    ideal: &Ideal,
    support_cap: &[IntVector],
) -> Result<IdealMembership> {
    let rank = ideal.universe().ambient();
    if f.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            got: f.rank(),
        });
    }
    for s in support_cap {
        s.check_rank(rank)?;
        if !ideal.universe().member(s) {
            return Err(Error::Precondition {
                what: "bounded_ideal_membership",
                detail: format!("support cap exponent {s} outside the universe monoid"),
            });
        }
    }
    if f.is_zero() {
        return Ok(IdealMembership::Certificate(MembershipCertificate {
            target: f.clone(),
            cofactors: Vec::new(),
        }));
    }
    if ideal.generators().is_empty() || support_cap.is_empty() {
        return Ok(IdealMembership::Undecided);
    }

    // Unknowns: one integer per (generator, cap exponent). Equations: one
    // per exponent reachable by cap + generator supports, plus the target's.
    let mut cap: Vec<IntVector> = support_cap.to_vec();
    cap.sort();
    cap.dedup();
    let mut exponents: BTreeSet<IntVector> = f.exponents().cloned().collect();
    for g in ideal.generators() {
        for ge in g.exponents() {
            for s in &cap {
                exponents.insert(ge + s);
            }
        }
    }
    let exponents: Vec<IntVector> = exponents.into_iter().collect();
    let columns: Vec<(usize, &IntVector)> = ideal
        .generators()
        .iter()
        .enumerate()
        .flat_map(|(gi, _)| cap.iter().map(move |s| (gi, s)))
        .collect();

    let mut rows = Vec::with_capacity(exponents.len());
    for e in &exponents {
        let row: Vec<BigInt> = columns
            .iter()
            .map(|(gi, s)| {
                if s.le_componentwise(e) {
                    ideal.generators()[*gi].coeff(&(e - *s))
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        rows.push(row);
    }
    let a = IntMatrix::new(rows);
    let b = IntVector::new(exponents.iter().map(|e| f.coeff(e)).collect());

    let Some(x) = solve_integer(&a, &b) else {
        return Ok(IdealMembership::Undecided);
    };

    let mut cofactors: Vec<(SparsePoly, usize)> = Vec::new();
    for (gi, _) in ideal.generators().iter().enumerate() {
        let mut poly = SparsePoly::zero(rank, Domain::Integers);
        for (ci, (cgi, s)) in columns.iter().enumerate() {
            if *cgi == gi && !x.get(ci).is_zero() {
                poly = poly.add(&SparsePoly::monomial(
                    x.get(ci).clone(),
                    (*s).clone(),
                    Domain::Integers,
                )?)?;
            }
        }
        if !poly.is_zero() {
            cofactors.push((poly, gi));
        }
    }
    let cert = MembershipCertificate {
        target: f.clone(),
        cofactors,
    };
    cert.verify(ideal)?;
    Ok(IdealMembership::Certificate(cert))
}

/// Witness that the class of x^α is torsion-nilpotent in Z[C]/I: a
/// verified representation q·x^(ℓα) = Σ f_i h_i.
#[derive(Debug, Clone)]
pub struct NtWitness {
    pub exponent: IntVector,
    pub multiplier: BigInt,
    pub power: u64,
    pub certificate: MembershipCertificate,
}

/// Detailed check of a torsion-nilpotence witness against an ideal.
pub fn validate_nt_witness(w: &NtWitness, ideal: &Ideal) -> Result<()> {
    if w.multiplier < BigInt::one() || w.power == 0 {
        return Err(Error::Precondition {
            what: "NtWitness",
            detail: "multiplier and power must be positive".into(),
        });
    }
    let expected = SparsePoly::monomial(
        w.multiplier.clone(),
        w.exponent.scale(&BigInt::from(w.power)),
        Domain::Integers,
    )?;
    let claim = w.certificate.target.clone().into_integers();
    if claim.sub(&expected)?.is_zero() {
        w.certificate.verify(ideal)
    } else {
        Err(Error::Precondition {
            what: "NtWitness",
            detail: format!(
                "certificate target {} does not equal {}",
                w.certificate.target, expected
            ),
        })
    }
}

/// Boolean form of the witness check; diagnostics via
/// [`validate_nt_witness`].
pub fn check_nt_witness(w: &NtWitness, ideal: &Ideal) -> bool {
    validate_nt_witness(w, ideal).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn n0() -> AffineMonoid {
        AffineMonoid::new(1, &[iv(&[1])]).unwrap()
    }

    fn p(text: &str) -> SparsePoly {
        SparsePoly::parse(text, 1, Domain::Integers).unwrap()
    }

    #[test]
    fn monomial_ideal_membership() {
        // I = (2x) in Z[N0], f = 2x^3, cap {0, 1, 2}: f = x^2 * 2x.
        let ideal = Ideal::new(n0(), vec![p("2*x^(1)")]).unwrap();
        let cap = [iv(&[0]), iv(&[1]), iv(&[2])];
        let out = bounded_ideal_membership(&p("2*x^(3)"), &ideal, &cap).unwrap();
        let IdealMembership::Certificate(cert) = out else {
            panic!("expected certificate");
        };
        assert_eq!(cert.cofactors.len(), 1);
        assert_eq!(cert.cofactors[0].0, p("1*x^(2)"));
        cert.verify(&ideal).unwrap();
    }

    #[test]
    fn evaluation_obstruction_yields_undecided() {
        // I = (x - 2): 5 is not in I (evaluation at x = 2 gives 5), so any
        // cap must come back Undecided.
        let ideal = Ideal::new(n0(), vec![p("1*x^(1) + -2")]).unwrap();
        for cap_max in [2i64, 4, 6] {
            let cap: Vec<IntVector> = (0..=cap_max).map(|i| iv(&[i])).collect();
            let out = bounded_ideal_membership(&p("5"), &ideal, &cap).unwrap();
            assert!(matches!(out, IdealMembership::Undecided));
        }
    }

    #[test]
    fn zero_polynomial_has_empty_certificate() {
        let ideal = Ideal::new(n0(), vec![p("2*x^(1)")]).unwrap();
        let out =
            bounded_ideal_membership(&SparsePoly::zero(1, Domain::Integers), &ideal, &[iv(&[0])])
                .unwrap();
        let IdealMembership::Certificate(cert) = out else {
            panic!("expected empty certificate");
        };
        assert!(cert.cofactors.is_empty());
    }

    #[test]
    fn nontrivial_membership_in_binomial_ideal() {
        // I = (x - 2): x^2 - 4 = (x + 2)(x - 2).
        let ideal = Ideal::new(n0(), vec![p("1*x^(1) + -2")]).unwrap();
        let cap: Vec<IntVector> = (0..=1).map(|i| iv(&[i])).collect();
        let out = bounded_ideal_membership(&p("1*x^(2) + -4"), &ideal, &cap).unwrap();
        let IdealMembership::Certificate(cert) = out else {
            panic!("expected certificate");
        };
        cert.verify(&ideal).unwrap();
    }

    #[test]
    fn nt_witness_examples() {
        let ideal = Ideal::new(n0(), vec![p("2*x^(1)")]).unwrap();
        // 2x = 1 * (2x): the class of x is torsion with q = 2, l = 1.
        let ok = NtWitness {
            exponent: iv(&[1]),
            multiplier: BigInt::from(2),
            power: 1,
            certificate: MembershipCertificate {
                target: p("2*x^(1)"),
                cofactors: vec![(p("1"), 0)],
            },
        };
        assert!(check_nt_witness(&ok, &ideal));

        // q = 1 is not enough: x itself is not in (2x) over Z.
        let bad = NtWitness {
            exponent: iv(&[1]),
            multiplier: BigInt::one(),
            power: 1,
            certificate: MembershipCertificate {
                target: p("1*x^(1)"),
                cofactors: vec![(p("1"), 0)],
            },
        };
        assert!(!check_nt_witness(&bad, &ideal));

        // 2x^2 = x * 2x.
        let pow2 = NtWitness {
            exponent: iv(&[1]),
            multiplier: BigInt::from(2),
            power: 2,
            certificate: MembershipCertificate {
                target: p("2*x^(2)"),
                cofactors: vec![(p("1*x^(1)"), 0)],
            },
        };
        assert!(check_nt_witness(&pow2, &ideal));
    }

    #[test]
    fn ideal_text_round_trip() {
        let ideal = Ideal::new(n0(), vec![p("2*x^(1)"), p("1*x^(2) + -3")]).unwrap();
        let text = ideal.to_text();
        let back = Ideal::parse(&text).unwrap();
        assert_eq!(back.universe(), ideal.universe());
        assert_eq!(back.generators(), ideal.generators());
        assert!(Ideal::parse("n 1\n1\n").is_err()); // no separator
    }

    #[test]
    fn certificate_found_by_search_validates_as_nt_witness() {
        let ideal = Ideal::new(n0(), vec![p("2*x^(1)")]).unwrap();
        let cap: Vec<IntVector> = (0..=3).map(|i| iv(&[i])).collect();
        let target = p("2*x^(2)");
        let IdealMembership::Certificate(cert) =
            bounded_ideal_membership(&target, &ideal, &cap).unwrap()
        else {
            panic!("expected certificate")
        };
        let w = NtWitness {
            exponent: iv(&[2]),
            multiplier: BigInt::from(2),
            power: 1,
            certificate: cert,
        };
        assert!(check_nt_witness(&w, &ideal));
    }
}
