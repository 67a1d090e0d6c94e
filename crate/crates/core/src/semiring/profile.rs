use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use super::FiniteSemiring;

/// Index and period of the additive cyclic semigroup {n·a : n ≥ 1}:
/// orbit[t] = (t+1)·a for t < index + period - 1, and
/// (index + period)·a = index·a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicData {
    pub index: u64,
    pub period: u64,
    pub orbit: Vec<usize>,
}

/// The eventually periodic sequence n ↦ n·a.
pub fn additive_cyclic(s: &FiniteSemiring, a: usize) -> CyclicData {
    let mut seen: HashMap<usize, u64> = HashMap::new();
    let mut orbit = Vec::new();
    let mut v = a;
    let mut n = 1u64;
    loop {
        if let Some(&first) = seen.get(&v) {
            return CyclicData {
                index: first,
                period: n - first,
                orbit,
            };
        }
        seen.insert(v, n);
        orbit.push(v);
        v = s.add(v, a);
        n += 1;
    }
}

impl CyclicData {
    /// n·a via the eventual periodicity, n ≥ 1.
    pub fn value(&self, n: u64) -> usize {
        assert!(n >= 1);
        let len = self.orbit.len() as u64; // index + period - 1
        if n <= len {
            self.orbit[(n - 1) as usize]
        } else {
            let m = self.index + (n - self.index) % self.period;
            self.orbit[(m - 1) as usize]
        }
    }
}

/// Witness for strong almost-divisibility: a = m·c with m in the periodic
/// tail of c's cyclic semigroup and the residue m mod period coprime to the
/// period, so every prime in that residue class beyond the index divides a.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SadWitness {
    pub divisor: usize,
    pub tail_multiple: u64,
    pub period: u64,
}

/// Additive classification of one element.
#[derive(Debug, Clone, Serialize)]
pub struct ElementProfile {
    pub element: usize,
    pub index: u64,
    pub period: u64,
    pub idempotent: bool,
    /// Always true in a finite semiring; computed, not assumed.
    pub torsion: bool,
    pub regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_witness: Option<usize>,
    pub divisible: bool,
    pub strongly_almost_divisible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sad_witness: Option<SadWitness>,
    pub almost_divisible: bool,
    /// Least k with k·a strongly almost-divisible, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ad_witness: Option<u64>,
}

pub fn profile(s: &FiniteSemiring, a: usize) -> ElementProfile {
    let cyclic: Vec<CyclicData> = s.elements().map(|c| additive_cyclic(s, c)).collect();
    profile_with(s, a, &cyclic)
}

/// Profile with precomputed cyclic data for all elements (the divisibility
/// classifiers quantify over candidate divisors).
pub(crate) fn profile_with(s: &FiniteSemiring, a: usize, cyclic: &[CyclicData]) -> ElementProfile {
    let cyc_a = &cyclic[a];
    let idempotent = s.add(a, a) == a;
    let torsion = true; // the orbit is finite by construction
    let regular_witness = s.elements().find(|&b| s.add(s.add(a, b), a) == a);

    let sad_witness = sad_witness(s, a, cyclic);

    // Almost-divisible: some multiple k·a is strongly almost-divisible.
    // All values of k·a are realised by k up to index + period - 1.
    let mut ad_witness = None;
    for k in 1..=(cyc_a.index + cyc_a.period - 1) {
        let b = cyc_a.value(k);
        if sad_witness_for(s, b, cyclic).is_some() {
            ad_witness = Some(k);
            break;
        }
    }

    ElementProfile {
        element: a,
        index: cyc_a.index,
        period: cyc_a.period,
        idempotent,
        torsion,
        regular: regular_witness.is_some(),
        regular_witness,
        divisible: divisible(s, a, cyclic),
        strongly_almost_divisible: sad_witness.is_some(),
        sad_witness,
        almost_divisible: ad_witness.is_some(),
        ad_witness,
    }
}

fn sad_witness(s: &FiniteSemiring, a: usize, cyclic: &[CyclicData]) -> Option<SadWitness> {
    sad_witness_for(s, a, cyclic)
}

/// a is strongly almost-divisible iff some c reaches a in its periodic
/// tail at a multiple coprime to the period: infinitely many primes lie in
/// that residue class, and each prime p ≥ index with p ≡ m (mod period)
/// satisfies p·c = m·c = a.
fn sad_witness_for(s: &FiniteSemiring, a: usize, cyclic: &[CyclicData]) -> Option<SadWitness> {
    for c in s.elements() {
        let cyc = &cyclic[c];
        for m in cyc.index..(cyc.index + cyc.period) {
            if cyc.value(m) == a && (m % cyc.period).gcd(&cyc.period) == 1 {
                return Some(SadWitness {
                    divisor: c,
                    tail_multiple: m,
                    period: cyc.period,
                });
            }
        }
    }
    None
}

/// Divisibility: for every n ≥ 1 there is c with n·c = a. Each map n ↦ n·c
/// is eventually periodic, so it suffices to check n up to the maximal
/// index directly and then verify that the residue classes
/// {m mod period(c) : m in the tail of c with m·c = a} cover all residues
/// modulo the lcm of the periods. The cover is checked by progressive
/// refinement so the lcm is never materialised when coverage fails early
/// or succeeds with small moduli.
fn divisible(s: &FiniteSemiring, a: usize, cyclic: &[CyclicData]) -> bool {
    let max_index = cyclic.iter().map(|c| c.index).max().unwrap_or(1);
    // Small n, including everything below any tail.
    for n in 1..=max_index {
        if !s.elements().any(|c| cyclic[c].value(n) == a) {
            return false;
        }
    }
    // Residue classes per candidate divisor.
    let mut progressions: Vec<(u64, Vec<u64>)> = Vec::new(); // (period, residues)
    for c in s.elements() {
        let cyc = &cyclic[c];
        let residues: Vec<u64> = (cyc.index..cyc.index + cyc.period)
            .filter(|&m| cyc.value(m) == a)
            .map(|m| m % cyc.period)
            .collect();
        if !residues.is_empty() {
            progressions.push((cyc.period, residues));
        }
    }
    if progressions.is_empty() {
        return false;
    }
    // Any divisor with full residue coverage settles it at once.
    if progressions
        .iter()
        .any(|(p, rs)| rs.len() as u64 == *p)
    {
        return true;
    }
    // Progressive refinement: maintain the uncovered residues modulo a
    // growing modulus, folding in one period at a time.
    let mut modulus: u64 = 1;
    let mut uncovered: Vec<u64> = vec![0];
    for (p, _) in &progressions {
        let new_modulus = modulus.lcm(p);
        assert!(
            new_modulus <= 50_000_000,
            "divisibility modulus {new_modulus} exceeds desk scale"
        );
        if new_modulus != modulus {
            let factor = new_modulus / modulus;
            let mut expanded = Vec::with_capacity(uncovered.len() * factor as usize);
            for &r in &uncovered {
                for t in 0..factor {
                    expanded.push(r + t * modulus);
                }
            }
            uncovered = expanded;
            modulus = new_modulus;
        }
        uncovered.retain(|&r| {
            !progressions
                .iter()
                .any(|(pc, rs)| rs.contains(&(r % pc)))
        });
        if uncovered.is_empty() {
            return true;
        }
    }
    uncovered.is_empty()
}

/// One violated implication of the additive-property diagram.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramViolation {
    pub element: usize,
    pub implication: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub order: usize,
    pub violations: Vec<DiagramViolation>,
}

impl DiagramReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every element, the implication diagram between the additive
/// properties:
///
/// ```text
/// idempotent => regular and torsion => torsion
///     ||               ||                ||
///     vv               vv                vv
/// divisible  => strongly almost-div => almost-divisible
/// ```
///
/// A violation signals an implementation bug; none can occur mathematically.
pub fn check_diagram(s: &FiniteSemiring) -> DiagramReport {
    let cyclic: Vec<CyclicData> = s.elements().map(|c| additive_cyclic(s, c)).collect();
    let mut violations = Vec::new();
    for a in s.elements() {
        let p = profile_with(s, a, &cyclic);
        let checks: [(&'static str, bool); 7] = [
            (
                "idempotent => regular and torsion",
                !p.idempotent || (p.regular && p.torsion),
            ),
            ("regular and torsion => torsion", !(p.regular && p.torsion) || p.torsion),
            ("idempotent => divisible", !p.idempotent || p.divisible),
            (
                "regular and torsion => strongly almost-divisible",
                !(p.regular && p.torsion) || p.strongly_almost_divisible,
            ),
            (
                "divisible => strongly almost-divisible",
                !p.divisible || p.strongly_almost_divisible,
            ),
            (
                "strongly almost-divisible => almost-divisible",
                !p.strongly_almost_divisible || p.almost_divisible,
            ),
            ("torsion => almost-divisible", !p.torsion || p.almost_divisible),
        ];
        for (implication, ok) in checks {
            if !ok {
                violations.push(DiagramViolation {
                    element: a,
                    implication,
                });
            }
        }
    }
    DiagramReport {
        order: s.order(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_data_of_boolean_one() {
        let b = FiniteSemiring::boolean();
        let c = additive_cyclic(&b, 1);
        assert_eq!((c.index, c.period), (1, 1));
        assert_eq!(c.value(17), 1);
    }

    #[test]
    fn cyclic_data_in_z4() {
        let z4 = FiniteSemiring::z_mod(4);
        let c = additive_cyclic(&z4, 1);
        assert_eq!((c.index, c.period), (1, 4));
        assert_eq!(c.value(6), 2);
    }

    #[test]
    fn boolean_one_has_every_property() {
        let b = FiniteSemiring::boolean();
        let p = profile(&b, 1);
        assert!(p.idempotent);
        assert!(p.regular);
        assert!(p.divisible);
        assert!(p.strongly_almost_divisible);
        assert!(p.almost_divisible);
        assert!(p.torsion);
    }

    #[test]
    fn z4_one_is_sad_but_not_idempotent() {
        let z4 = FiniteSemiring::z_mod(4);
        let p = profile(&z4, 1);
        assert!(!p.idempotent);
        assert!(p.regular);
        assert!(p.strongly_almost_divisible);
        // 1 = p·c needs only odd primes: witness period 4, residues 1 or 3.
        let w = p.sad_witness.unwrap();
        assert_eq!(w.period, 4);
        assert_eq!(w.tail_multiple.gcd(&4), 1);
        // Z4 additive group: 1 is divisible by every odd n but not by 2:
        // 2c = 1 has no solution mod 4.
        assert!(!p.divisible);
    }

    #[test]
    fn z3_one_is_divisible() {
        // In Z3 every n coprime to 3 inverts, and 3c = 0 != 1... n = 3:
        // need 3c = 1: impossible, so NOT divisible; still SAD.
        let z3 = FiniteSemiring::z_mod(3);
        let p = profile(&z3, 1);
        assert!(!p.divisible);
        assert!(p.strongly_almost_divisible);
        // Zero is divisible: n·0 = 0 for all n.
        let p0 = profile(&z3, 0);
        assert!(p0.divisible);
        assert!(p0.idempotent);
    }

    #[test]
    fn truncated_naturals_one_is_not_regular_and_not_sad() {
        let t2 = FiniteSemiring::truncated_naturals(2);
        let p = profile(&t2, 1);
        assert!(!p.regular); // 1 + b + 1 >= 2 for every b
        assert!(!p.strongly_almost_divisible); // p·c = 1 forces c = 1, p = 1
        assert!(p.torsion);
        // 2 = top is idempotent: 2 + 2 = 2.
        let p2 = profile(&t2, 2);
        assert!(p2.idempotent);
        assert!(p2.strongly_almost_divisible);
        // 1 is almost-divisible: 2·1 = 2 is idempotent hence SAD.
        assert!(p.almost_divisible);
        assert_eq!(p.ad_witness, Some(2));
    }

    #[test]
    fn diagram_clean_on_reference_semirings() {
        for s in [
            FiniteSemiring::boolean(),
            FiniteSemiring::z_mod(4),
            FiniteSemiring::z_mod(3),
            FiniteSemiring::truncated_naturals(2),
            FiniteSemiring::truncated_naturals(5),
            FiniteSemiring::z_mod(12),
        ] {
            let report = check_diagram(&s);
            assert!(report.clean(), "violations: {:?}", report.violations);
        }
    }

    #[test]
    fn divisible_covering_beyond_single_divisor() {
        // In Z6 neither 1 nor 3 is divisible by 2 (doubling hits {0,2,4});
        // 0 is divisible as an idempotent.
        let z6 = FiniteSemiring::z_mod(6);
        assert!(profile(&z6, 0).divisible);
        assert!(!profile(&z6, 1).divisible);
        assert!(!profile(&z6, 3).divisible);
    }
}
