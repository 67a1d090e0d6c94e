use serde::Serialize;

use super::profile::{additive_cyclic, profile_with, CyclicData};
use super::{grothendieck, FiniteSemiring};
use crate::util::primes_up_to;
use crate::{Error, Result};

/// The subsemiring Q_S = {x : x + a = k·1 for some k ≥ 1, a ∈ S} of a
/// semiring with unity, together with its restriction tables.
#[derive(Debug, Clone)]
pub struct QSubsemiring {
    /// Elements of Q_S as parent indices, sorted.
    pub elements: Vec<usize>,
    /// Q_S as a standalone semiring (reindexed tables).
    pub sub: FiniteSemiring,
    /// parent index → sub index.
    pub parent_to_sub: Vec<Option<usize>>,
}

/// Computes Q_S exhaustively; k ranges over the additive cyclic semigroup
/// of the unity. The result is verified to be a subsemiring containing the
/// unity and closed under summands (x + y ∈ Q_S forces x, y ∈ Q_S).
pub fn q_subsemiring(s: &FiniteSemiring) -> Result<QSubsemiring> {
    let one = s.unity().ok_or(Error::NoUnity)?;
    let cyc = additive_cyclic(s, one);
    let unit_multiples: Vec<usize> = {
        let mut v = cyc.orbit.clone();
        v.sort();
        v.dedup();
        v
    };
    let mut elements: Vec<usize> = s
        .elements()
        .filter(|&x| {
            s.elements()
                .any(|a| unit_multiples.contains(&s.add(x, a)))
        })
        .collect();
    elements.sort();

    // Invariants that hold by the algebra; violations are bug signals.
    if !elements.contains(&one) {
        return Err(Error::Internal("unity escaped Q_S".into()));
    }
    for &x in &elements {
        for &y in &elements {
            for (op, name) in [(s.add(x, y), "addition"), (s.mul(x, y), "multiplication")] {
                if !elements.contains(&op) {
                    return Err(Error::Internal(format!("Q_S not closed under {name}")));
                }
            }
        }
    }
    for x in s.elements() {
        for y in s.elements() {
            if elements.contains(&s.add(x, y)) && (!elements.contains(&x) || !elements.contains(&y))
            {
                return Err(Error::Internal("Q_S not summand-closed".into()));
            }
        }
    }

    let mut parent_to_sub = vec![None; s.order()];
    for (i, &x) in elements.iter().enumerate() {
        parent_to_sub[x] = Some(i);
    }
    let reindex = |x: usize| parent_to_sub[x].expect("closure verified");
    let add = elements
        .iter()
        .map(|&x| elements.iter().map(|&y| reindex(s.add(x, y))).collect())
        .collect();
    let mul = elements
        .iter()
        .map(|&x| elements.iter().map(|&y| reindex(s.mul(x, y))).collect())
        .collect();
    let sub = FiniteSemiring::validate(add, mul)
        .map_err(|e| Error::Internal(format!("Q_S tables violate axioms: {e}")))?;

    Ok(QSubsemiring {
        elements,
        sub,
        parent_to_sub,
    })
}

/// For a semiring with unity, a unity-preserving homomorphism from some
/// N_P with infinite P exists iff the unity is strongly almost-divisible.
pub fn np_hom_exists(s: &FiniteSemiring) -> Result<bool> {
    let one = s.unity().ok_or(Error::NoUnity)?;
    let cyclic: Vec<CyclicData> = s.elements().map(|c| additive_cyclic(s, c)).collect();
    Ok(profile_with(s, one, &cyclic).strongly_almost_divisible)
}

/// The explicit homomorphism witnesses: primes p ≤ bound together with the
/// inverse-like element a_p satisfying (p·1)·a_p = 1. The map
/// k/(p_1···p_m) ↦ k·a_{p_1}···a_{p_m} is then a unity-preserving
/// homomorphism from N_P for P the (infinite) residue class of primes.
pub fn np_hom_witnesses(s: &FiniteSemiring, bound: u64) -> Result<Vec<(u64, usize)>> {
    let one = s.unity().ok_or(Error::NoUnity)?;
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        let p_one = s.n_times(p, one);
        if let Some(a) = s.elements().find(|&a| s.mul(p_one, a) == one) {
            out.push((p, a));
        }
    }
    Ok(out)
}

/// Finite-scale consequences of the torsion/divisibility equivalences for
/// factors of N[C] (every finite commutative semiring with unity is one).
#[derive(Debug, Clone, Serialize)]
pub struct TorsionDivisibilityReport {
    pub order: usize,
    /// Finite ⟹ torsion ⟹ almost-divisible, for every element.
    pub all_almost_divisible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_divisible_counterexample: Option<usize>,
    /// The unity is strongly almost-divisible.
    pub sad_unity: bool,
    /// Every element is (additively) regular.
    pub all_regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_counterexample: Option<usize>,
    /// The finite-scale equivalence: SAD(1_S) ⟺ all elements regular.
    pub sad_regular_equivalence: bool,
    /// |Q_S|.
    pub q_sub_order: usize,
    /// S almost-divisible ⟺ Q_S almost-divisible, both sides computed
    /// independently (Q_S profiled as a standalone semiring).
    pub qs_ad_equivalence: bool,
    /// The additive group of G(Q_S) is torsion.
    pub g_qs_torsion: bool,
    /// |G(Q_S)|.
    pub g_qs_order: usize,
    /// The chain: torsion(S) ⟺ almost-divisible(S) ∧ torsion(G(Q_S));
    /// the left side is automatic for finite S, so the right side must hold.
    pub equivalence_chain: bool,
    pub pass: bool,
}

pub fn check_torsion_divisibility(s: &FiniteSemiring) -> Result<TorsionDivisibilityReport> {
    let one = s.unity().ok_or(Error::NoUnity)?;
    let cyclic: Vec<CyclicData> = s.elements().map(|c| additive_cyclic(s, c)).collect();
    let profiles: Vec<_> = s
        .elements()
        .map(|a| profile_with(s, a, &cyclic))
        .collect();

    let almost_divisible_counterexample = profiles
        .iter()
        .find(|p| !p.almost_divisible)
        .map(|p| p.element);
    let all_almost_divisible = almost_divisible_counterexample.is_none();

    let sad_unity = profiles[one].strongly_almost_divisible;
    let regular_counterexample = profiles.iter().find(|p| !p.regular).map(|p| p.element);
    let all_regular = regular_counterexample.is_none();
    let sad_regular_equivalence = sad_unity == all_regular;

    let q = q_subsemiring(s)?;
    let s_ad = all_almost_divisible;
    let q_cyclic: Vec<CyclicData> = q
        .sub
        .elements()
        .map(|c| additive_cyclic(&q.sub, c))
        .collect();
    let q_ad = q
        .sub
        .elements()
        .all(|a| profile_with(&q.sub, a, &q_cyclic).almost_divisible);
    let qs_ad_equivalence = s_ad == q_ad;

    let g = grothendieck(&q.sub)?;
    let g_qs_torsion = g.additive_torsion();
    let equivalence_chain = all_almost_divisible && g_qs_torsion;

    let pass = all_almost_divisible
        && sad_regular_equivalence
        && qs_ad_equivalence
        && g_qs_torsion
        && equivalence_chain;

    Ok(TorsionDivisibilityReport {
        order: s.order(),
        all_almost_divisible,
        almost_divisible_counterexample,
        sad_unity,
        all_regular,
        regular_counterexample,
        sad_regular_equivalence,
        q_sub_order: q.elements.len(),
        qs_ad_equivalence,
        g_qs_torsion,
        g_qs_order: g.order(),
        equivalence_chain,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_of_boolean_is_everything() {
        let q = q_subsemiring(&FiniteSemiring::boolean()).unwrap();
        assert_eq!(q.elements, vec![0, 1]);
    }

    #[test]
    fn q_of_z4_is_everything() {
        let q = q_subsemiring(&FiniteSemiring::z_mod(4)).unwrap();
        assert_eq!(q.elements, vec![0, 1, 2, 3]);
    }

    #[test]
    fn q_of_truncated_naturals_is_everything() {
        // x + a = 2 = 2·1 is reachable for every x in T2.
        let q = q_subsemiring(&FiniteSemiring::truncated_naturals(2)).unwrap();
        assert_eq!(q.elements, vec![0, 1, 2]);
    }

    #[test]
    fn np_hom_of_reference_semirings() {
        assert!(np_hom_exists(&FiniteSemiring::boolean()).unwrap());
        assert!(np_hom_exists(&FiniteSemiring::z_mod(4)).unwrap());
        assert!(!np_hom_exists(&FiniteSemiring::truncated_naturals(2)).unwrap());
    }

    #[test]
    fn np_hom_witnesses_odd_primes_in_z4() {
        let w = np_hom_witnesses(&FiniteSemiring::z_mod(4), 20).unwrap();
        let primes: Vec<u64> = w.iter().map(|&(p, _)| p).collect();
        assert_eq!(primes, vec![3, 5, 7, 11, 13, 17, 19]);
        for (p, a) in w {
            let z4 = FiniteSemiring::z_mod(4);
            assert_eq!(z4.mul(z4.n_times(p, 1), a), 1);
        }
    }

    #[test]
    fn torsion_divisibility_checks_pass_on_references() {
        for s in [
            FiniteSemiring::boolean(),
            FiniteSemiring::z_mod(3),
            FiniteSemiring::z_mod(4),
            FiniteSemiring::truncated_naturals(2),
            FiniteSemiring::truncated_naturals(4),
        ] {
            let r = check_torsion_divisibility(&s).unwrap();
            assert!(r.pass, "report: {r:?}");
        }
    }

    #[test]
    fn truncated_naturals_fail_sad_but_also_regularity() {
        let r = check_torsion_divisibility(&FiniteSemiring::truncated_naturals(2)).unwrap();
        assert!(!r.sad_unity);
        assert!(!r.all_regular);
        assert!(r.sad_regular_equivalence);
    }

    #[test]
    fn no_unity_is_an_error() {
        // {a, b} with x + y = a, x·y = a: associative, commutative,
        // distributive, no multiplicative identity.
        let s = FiniteSemiring::validate(vec![vec![0, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 0]])
            .unwrap();
        assert!(matches!(q_subsemiring(&s), Err(Error::NoUnity)));
    }
}
