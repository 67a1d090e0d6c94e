use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::FiniteSemiring;
use crate::linalg::{IntVector, RatMatrix};
use crate::monoid::AffineMonoid;
use crate::poly::{support_in, Domain, SparsePoly};
use crate::{Error, Result};

/// A finitely presented factor of N[C]: the monoid, the relation pairs,
/// and the class-count cap below which an explicit quotient is accepted.
#[derive(Debug, Clone)]
pub struct CongruencePresentation {
    pub monoid: AffineMonoid,
    pub relations: Vec<(SparsePoly, SparsePoly)>,
    pub size_cap: usize,
}

/// Result of the congruence closure: explicit tables, or Undecided when a
/// budget was exhausted (the word problem is undecidable in general, so
/// Undecided is an expected value, not an error).
#[derive(Debug, Clone)]
pub enum QuotientOutcome {
    Finite(FiniteSemiring),
    Undecided { reason: String },
}

impl QuotientOutcome {
    pub fn finite(self) -> Option<FiniteSemiring> {
        match self {
            QuotientOutcome::Finite(s) => Some(s),
            QuotientOutcome::Undecided { .. } => None,
        }
    }
}

/// Serde-facing presentation file:
/// `{monoid: {rank, generators}, relations: [[poly, poly], ...], size_cap}`.
/// Polynomials are either text (`"2*x^(1,1) + 1*x^(2,0)"`) or term lists
/// (`[["2", [1, 1]], ["1", [2, 0]]]`).
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct PresentationSpec {
    pub monoid: MonoidSpec,
    pub relations: Vec<(PolySpec, PolySpec)>,
    pub size_cap: usize,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MonoidSpec {
    pub rank: usize,
    pub generators: Vec<IntVector>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum PolySpec {
    Text(String),
    Terms(Vec<(CoeffSpec, IntVector)>),
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Int(i64),
    Text(String),
}

impl PolySpec {
    fn build(&self, rank: usize) -> Result<SparsePoly> {
        match self {
            PolySpec::Text(t) => SparsePoly::parse(t, rank, Domain::Naturals),
            PolySpec::Terms(terms) => {
                let mut pairs = Vec::new();
                for (c, e) in terms {
                    let coeff: BigInt = match c {
                        CoeffSpec::Int(v) => BigInt::from(*v),
                        CoeffSpec::Text(s) => s
                            .parse()
                            .map_err(|e| crate::Error::Parse(format!("bad coefficient: {e}")))?,
                    };
                    pairs.push((e.clone(), coeff));
                }
                SparsePoly::from_terms(rank, Domain::Naturals, pairs)
            }
        }
    }
}

impl PresentationSpec {
    pub fn build(&self) -> Result<CongruencePresentation> {
        let monoid = AffineMonoid::new(self.monoid.rank, &self.monoid.generators)?;
        let relations = self
            .relations
            .iter()
            .map(|(l, r)| Ok((l.build(self.monoid.rank)?, r.build(self.monoid.rank)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CongruencePresentation {
            monoid,
            relations,
            size_cap: self.size_cap,
        })
    }
}

const NODE_LIMIT: usize = 60_000;
const ROUND_LIMIT: usize = 40;

/// Computes the factor semiring N[C]/θ for the congruence θ generated by
/// the relation pairs, whenever it can both find and *certify* a finite
/// answer.
///
/// Exploration: polynomials reachable from the generators by addition,
/// multiplication and one-step relation rewrites f ↦ f − l·x^γ + r·x^γ
/// (γ ∈ C), with union-find over the explored universe. Every merge is a
/// consequence of θ, so classes never over-merge. A candidate table is
/// returned only after an exact certificate: evaluating every explored
/// polynomial through the candidate tables must reproduce its class, which
/// pins the explored classes to the true quotient. The certificate needs
/// the evaluation homomorphism to be well defined on monomials, which is
/// automatic exactly when the monoid generators are linearly independent;
/// other presentations return Undecided.
pub fn quotient(pres: &CongruencePresentation) -> Result<QuotientOutcome> {
    let rank = pres.monoid.ambient();
    for (l, r) in &pres.relations {
        for side in [l, r] {
            if side.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: side.rank(),
                });
            }
            if side.domain() != Domain::Naturals || side.is_zero() {
                return Err(Error::Precondition {
                    what: "CongruencePresentation",
                    detail: format!("relation side {side} must be a nonzero naturals polynomial"),
                });
            }
            if !support_in(&pres.monoid, side) {
                return Err(Error::Precondition {
                    what: "CongruencePresentation",
                    detail: format!("relation side {side} not supported in the monoid"),
                });
            }
        }
    }
    if pres.monoid.span().dim() != pres.monoid.generators().len() {
        return Ok(QuotientOutcome::Undecided {
            reason: "monoid generators are linearly dependent; the quotient cannot be certified"
                .into(),
        });
    }

    let mut closure = Closure::new(pres);
    closure.run()
}

struct Closure<'a> {
    pres: &'a CongruencePresentation,
    rank: usize,
    nodes: Vec<SparsePoly>,
    index: HashMap<SparsePoly, usize>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
    member_cache: HashMap<IntVector, bool>,
    factor_cache: HashMap<IntVector, Vec<u64>>,
    merged_this_round: bool,
}

impl<'a> Closure<'a> {
    fn new(pres: &'a CongruencePresentation) -> Self {
        let rank = pres.monoid.ambient();
        Closure {
            pres,
            rank,
            nodes: Vec::new(),
            index: HashMap::new(),
            parent: Vec::new(),
            queue: VecDeque::new(),
            member_cache: HashMap::new(),
            factor_cache: HashMap::new(),
            merged_this_round: false,
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.merged_this_round = true;
        }
    }

    fn insert(&mut self, poly: SparsePoly) -> usize {
        if let Some(&i) = self.index.get(&poly) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(poly.clone());
        self.index.insert(poly, i);
        self.parent.push(i);
        self.queue.push_back(i);
        i
    }

    fn monoid_member(&mut self, v: &IntVector) -> bool {
        if let Some(&b) = self.member_cache.get(v) {
            return b;
        }
        let b = self.pres.monoid.member(v);
        self.member_cache.insert(v.clone(), b);
        b
    }

    /// One-step rewrite targets of the node that do not grow its size.
    /// Growing targets are never explored: the operation closure already
    /// supplies the large polynomials whose shrinking cones connect the
    /// classes, and the final certificate rejects any under-merge this
    /// could cause.
    fn rewrite_targets(&mut self, i: usize) -> Result<Vec<SparsePoly>> {
        let f = self.nodes[i].clone();
        let budget = f.size();
        let mut out = Vec::new();
        for rel in 0..self.pres.relations.len() {
            for dir in 0..2 {
                let (l, r) = {
                    let (a, b) = &self.pres.relations[rel];
                    if dir == 0 {
                        (a.clone(), b.clone())
                    } else {
                        (b.clone(), a.clone())
                    }
                };
                let mut gammas: Vec<IntVector> = Vec::new();
                for e in f.exponents() {
                    for s in l.exponents() {
                        if s.le_componentwise(e) {
                            let g = e - s;
                            if !gammas.contains(&g) {
                                gammas.push(g);
                            }
                        }
                    }
                }
                for gamma in gammas {
                    if !self.monoid_member(&gamma) {
                        continue;
                    }
                    let shifted_l = l.shift_exponents(&gamma)?;
                    if !f.dominates(&shifted_l) {
                        continue;
                    }
                    let shifted_r = r.shift_exponents(&gamma)?;
                    let target = f
                        .clone()
                        .into_integers()
                        .sub(&shifted_l)?
                        .add(&shifted_r)?
                        .try_into_naturals()?;
                    if target.size() <= budget {
                        out.push(target);
                    }
                }
            }
        }
        Ok(out)
    }

    fn rewrite_close(&mut self) -> Result<()> {
        while let Some(i) = self.queue.pop_front() {
            for target in self.rewrite_targets(i)? {
                let j = self.insert(target);
                self.union(i, j);
            }
            if self.nodes.len() > NODE_LIMIT {
                return Ok(()); // budget exhausted; caller notices
            }
        }
        Ok(())
    }

    /// Canonical representative node of each class: minimal (size, poly).
    fn class_reps(&mut self) -> Vec<usize> {
        let mut best: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..self.nodes.len() {
            let root = self.find(i);
            let better = match best.get(&root) {
                None => true,
                Some(&b) => {
                    let (sb, si) = (self.nodes[b].size(), self.nodes[i].size());
                    (si, &self.nodes[i]) < (sb, &self.nodes[b])
                }
            };
            if better {
                best.insert(root, i);
            }
        }
        let mut reps: Vec<usize> = best.into_values().collect();
        reps.sort_by(|&a, &b| {
            (self.nodes[a].size(), &self.nodes[a]).cmp(&(self.nodes[b].size(), &self.nodes[b]))
        });
        reps
    }

    fn run(&mut self) -> Result<QuotientOutcome> {
        let one = SparsePoly::one(self.rank, Domain::Naturals);
        self.insert(one);
        let gens = self.pres.monoid.generators().to_vec();
        for g in &gens {
            let mono = SparsePoly::monomial(BigInt::from(1u32), g.clone(), Domain::Naturals)?;
            self.insert(mono);
        }
        for (l, r) in &self.pres.relations.to_vec() {
            self.insert(l.clone());
            self.insert(r.clone());
        }

        let hard_cap = 4 * self.pres.size_cap + 64;
        for _round in 0..ROUND_LIMIT {
            self.merged_this_round = false;
            self.rewrite_close()?;
            if self.nodes.len() > NODE_LIMIT {
                return Ok(QuotientOutcome::Undecided {
                    reason: format!("node budget {NODE_LIMIT} exhausted"),
                });
            }
            let reps = self.class_reps();
            if reps.len() > hard_cap {
                return Ok(QuotientOutcome::Undecided {
                    reason: format!(
                        "class count {} exceeded the exploration cap {hard_cap}",
                        reps.len()
                    ),
                });
            }
            let mut new_nodes = false;
            for i in 0..reps.len() {
                for j in i..reps.len() {
                    let sum = self.nodes[reps[i]].add(&self.nodes[reps[j]])?;
                    let prod = self.nodes[reps[i]].mul(&self.nodes[reps[j]])?;
                    for poly in [sum, prod] {
                        if !self.index.contains_key(&poly) {
                            self.insert(poly);
                            new_nodes = true;
                        }
                    }
                }
            }
            self.rewrite_close()?;
            if new_nodes || self.merged_this_round {
                continue;
            }
            // Stable round: attempt extraction with certificate.
            return match self.extract_and_certify()? {
                Some(semiring) if semiring.order() <= self.pres.size_cap => {
                    Ok(QuotientOutcome::Finite(semiring))
                }
                Some(semiring) => Ok(QuotientOutcome::Undecided {
                    reason: format!(
                        "quotient has {} classes, above the size cap {}",
                        semiring.order(),
                        self.pres.size_cap
                    ),
                }),
                None => Ok(QuotientOutcome::Undecided {
                    reason: "stable closure could not be certified as the exact quotient".into(),
                }),
            };
        }
        Ok(QuotientOutcome::Undecided {
            reason: "closure did not stabilise within the round budget".into(),
        })
    }

    fn extract_and_certify(&mut self) -> Result<Option<FiniteSemiring>> {
        let reps = self.class_reps();
        let classes = reps.len();
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        for (c, &rep) in reps.iter().enumerate() {
            let root = self.find(rep);
            class_of_root.insert(root, c);
        }

        let mut add = vec![vec![0usize; classes]; classes];
        let mut mul = vec![vec![0usize; classes]; classes];
        for i in 0..classes {
            for j in 0..classes {
                let sum = self.nodes[reps[i]].add(&self.nodes[reps[j]])?;
                let prod = self.nodes[reps[i]].mul(&self.nodes[reps[j]])?;
                let (Some(&si), Some(&pi)) = (self.index.get(&sum), self.index.get(&prod)) else {
                    return Ok(None);
                };
                let (sr, pr) = (self.find(si), self.find(pi));
                add[i][j] = class_of_root[&sr];
                mul[i][j] = class_of_root[&pr];
            }
        }

        let Ok(mut semiring) = FiniteSemiring::validate(add, mul) else {
            return Ok(None);
        };

        // Relations must have merged.
        for (l, r) in &self.pres.relations {
            let (Some(&li), Some(&ri)) = (self.index.get(l), self.index.get(r)) else {
                return Ok(None);
            };
            let (lr, rr) = (self.find(li), self.find(ri));
            if class_of_root[&lr] != class_of_root[&rr] {
                return Err(Error::Internal("relation sides not merged".into()));
            }
        }

        // Certificate: evaluating every explored node through the tables
        // reproduces its class.
        let one_cls = {
            let one = SparsePoly::one(self.rank, Domain::Naturals);
            let &oi = self.index.get(&one).ok_or_else(|| {
                Error::Internal("constant 1 missing from the closure".into())
            })?;
            let root = self.find(oi);
            class_of_root[&root]
        };
        let gens = self.pres.monoid.generators().to_vec();
        let mut gen_classes = Vec::with_capacity(gens.len());
        for g in &gens {
            let mono = SparsePoly::monomial(BigInt::from(1u32), g.clone(), Domain::Naturals)?;
            let &gi = self
                .index
                .get(&mono)
                .ok_or_else(|| Error::Internal("generator monomial missing".into()))?;
            let root = self.find(gi);
            gen_classes.push(class_of_root[&root]);
        }

        for i in 0..self.nodes.len() {
            let evaluated = self.eval_poly(&semiring, one_cls, &gen_classes, &self.nodes[i].clone())?;
            let root = self.find(i);
            if evaluated != class_of_root[&root] {
                return Ok(None);
            }
        }

        let mut generator_map: BTreeMap<IntVector, usize> = BTreeMap::new();
        generator_map.insert(IntVector::zero(self.rank), one_cls);
        for (g, c) in gens.iter().zip(&gen_classes) {
            generator_map.insert(g.clone(), *c);
        }
        semiring.set_generator_map(generator_map);
        Ok(Some(semiring))
    }

    /// Structural evaluation of a polynomial through candidate tables: the
    /// monoid is free on its generators, so exponent factorisation is
    /// unique and the evaluation is a well-defined homomorphism.
    fn eval_poly(
        &mut self,
        semiring: &FiniteSemiring,
        one_cls: usize,
        gen_classes: &[usize],
        f: &SparsePoly,
    ) -> Result<usize> {
        let mut acc: Option<usize> = None;
        for (e, k) in f.terms() {
            let mono = self.eval_monomial(semiring, one_cls, gen_classes, e)?;
            let term = n_times_class(semiring, k, mono)?;
            acc = Some(match acc {
                None => term,
                Some(v) => semiring.add(v, term),
            });
        }
        acc.ok_or_else(|| Error::Internal("evaluating the zero polynomial".into()))
    }

    fn eval_monomial(
        &mut self,
        semiring: &FiniteSemiring,
        one_cls: usize,
        gen_classes: &[usize],
        e: &IntVector,
    ) -> Result<usize> {
        let powers = self.factorize_exponent(e)?;
        let mut acc = one_cls;
        for (gi, &p) in powers.iter().enumerate() {
            if p > 0 {
                acc = semiring.mul(acc, semiring.pow(gen_classes[gi], p));
            }
        }
        Ok(acc)
    }

    /// Unique factorisation of a monoid element over the free generators.
    fn factorize_exponent(&mut self, e: &IntVector) -> Result<Vec<u64>> {
        if let Some(v) = self.factor_cache.get(e) {
            return Ok(v.clone());
        }
        let gens = self.pres.monoid.generators();
        if gens.is_empty() {
            if !e.is_zero() {
                return Err(Error::Internal(format!("exponent {e} in the zero monoid")));
            }
            return Ok(Vec::new());
        }
        let cols = RatMatrix::new(
            (0..self.rank)
                .map(|row| {
                    gens.iter()
                        .map(|g| BigRational::from_integer(g.get(row).clone()))
                        .collect()
                })
                .collect(),
        );
        let sol = cols
            .solve(&e.to_rational())
            .ok_or_else(|| Error::Internal(format!("exponent {e} outside the monoid span")))?;
        let mut powers = Vec::with_capacity(gens.len());
        for c in &sol {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Internal(format!(
                    "exponent {e} does not factor over the free generators"
                )));
            }
            powers.push(c.to_integer().to_u64().ok_or_else(|| {
                Error::Internal("exponent power exceeds u64".into())
            })?);
        }
        self.factor_cache.insert(e.clone(), powers.clone());
        Ok(powers)
    }
}

/// k·a over the addition table for an arbitrary-precision k ≥ 1.
fn n_times_class(semiring: &FiniteSemiring, k: &BigInt, a: usize) -> Result<usize> {
    if !k.is_positive() {
        return Err(Error::Internal(format!("coefficient {k} must be positive")));
    }
    let bits = k.bits();
    let mut acc: Option<usize> = None;
    let mut base = a;
    for i in 0..bits {
        if k.bit(i) {
            acc = Some(match acc {
                None => base,
                Some(v) => semiring.add(v, base),
            });
        }
        if i + 1 < bits {
            base = semiring.add(base, base);
        }
    }
    Ok(acc.expect("k >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n0() -> AffineMonoid {
        AffineMonoid::new(1, &[IntVector::from_i64(&[1])]).unwrap()
    }

    fn nat_poly(text: &str) -> SparsePoly {
        SparsePoly::parse(text, 1, Domain::Naturals).unwrap()
    }

    #[test]
    fn idempotent_presentation_has_three_classes() {
        // x^2 = x and 1 + 1 = 1: classes {1, x, 1 + x}.
        let pres = CongruencePresentation {
            monoid: n0(),
            relations: vec![
                (nat_poly("1*x^(2)"), nat_poly("1*x^(1)")),
                (nat_poly("2"), nat_poly("1")),
            ],
            size_cap: 16,
        };
        let s = quotient(&pres).unwrap().finite().expect("finite quotient");
        assert_eq!(s.order(), 3);
        assert_eq!(s.unity().is_some(), true);
        let report = super::super::profile::check_diagram(&s);
        assert!(report.clean());
    }

    #[test]
    fn additive_cyclic_presentation() {
        // x = 1 and 3 = 8: the additive cyclic semiring with index 3,
        // period 5, of order 7.
        let pres = CongruencePresentation {
            monoid: n0(),
            relations: vec![
                (nat_poly("1*x^(1)"), nat_poly("1")),
                (nat_poly("3"), nat_poly("8")),
            ],
            size_cap: 16,
        };
        let s = quotient(&pres).unwrap().finite().expect("finite quotient");
        assert_eq!(s.order(), 7);
        let one = s.unity().unwrap();
        let cyc = super::super::profile::additive_cyclic(&s, one);
        assert_eq!((cyc.index, cyc.period), (3, 5));
    }

    #[test]
    fn collapsing_presentation_gives_the_trivial_semiring() {
        let pres = CongruencePresentation {
            monoid: n0(),
            relations: vec![
                (nat_poly("1*x^(1)"), nat_poly("1")),
                (nat_poly("2"), nat_poly("1")),
                (nat_poly("1*x^(2)"), nat_poly("1*x^(1)")),
            ],
            size_cap: 16,
        };
        let s = quotient(&pres).unwrap().finite().expect("finite quotient");
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn free_presentation_is_undecided() {
        // No relations: N[N0] is infinite.
        let pres = CongruencePresentation {
            monoid: n0(),
            relations: vec![],
            size_cap: 8,
        };
        assert!(matches!(
            quotient(&pres).unwrap(),
            QuotientOutcome::Undecided { .. }
        ));
    }

    #[test]
    fn dependent_generators_are_undecided_with_reason() {
        let m = AffineMonoid::new(2, &[
            IntVector::from_i64(&[1, 1]),
            IntVector::from_i64(&[2, 2]),
        ])
        .unwrap();
        let pres = CongruencePresentation {
            monoid: m,
            relations: vec![],
            size_cap: 8,
        };
        let QuotientOutcome::Undecided { reason } = quotient(&pres).unwrap() else {
            panic!("expected undecided");
        };
        assert!(reason.contains("linearly dependent"));
    }

    #[test]
    fn boolean_square_from_rank_two_presentation() {
        // Two free generators, both idempotent squares, idempotent
        // addition: x^2 = x, y^2 = y, 1+1 = 1, xy = ... leave products free
        // but bounded: x*y = x+y collapses products into sums.
        let m = AffineMonoid::new(2, &[
            IntVector::from_i64(&[1, 0]),
            IntVector::from_i64(&[0, 1]),
        ])
        .unwrap();
        let p2 = |t: &str| SparsePoly::parse(t, 2, Domain::Naturals).unwrap();
        let pres = CongruencePresentation {
            monoid: m,
            relations: vec![
                (p2("1*x^(2,0)"), p2("1*x^(1,0)")),
                (p2("1*x^(0,2)"), p2("1*x^(0,1)")),
                (p2("2"), p2("1")),
                (p2("1*x^(1,1)"), p2("1*x^(1,0) + 1*x^(0,1)")),
            ],
            size_cap: 24,
        };
        let s = quotient(&pres).unwrap().finite().expect("finite quotient");
        assert!(s.order() >= 3);
        assert!(s.unity().is_some());
        assert!(super::super::profile::check_diagram(&s).clean());
    }

    #[test]
    fn quotient_respects_size_cap() {
        let pres = CongruencePresentation {
            monoid: n0(),
            relations: vec![
                (nat_poly("1*x^(1)"), nat_poly("1")),
                (nat_poly("3"), nat_poly("8")),
            ],
            size_cap: 4, // the true quotient has 7 classes
        };
        let QuotientOutcome::Undecided { reason } = quotient(&pres).unwrap() else {
            panic!("expected undecided under a small cap");
        };
        assert!(reason.contains("size cap"), "reason: {reason}");
    }
}
