use super::FiniteSemiring;
use crate::{Error, Result};

/// The ring of formal differences G(S) = (S × S)/≈ with
/// (x,y) ⊕ (x',y') = (x+x', y+y'), (x,y) ⊙ (x',y') = (xx'+yy', xy'+x'y)
/// and (x,y) ≈ (x',y') iff x + y' + t = x' + y + t for some witness t.
///
/// Every construction invariant (≈ transitive as computed, ring axioms,
/// additive inverses, σ a homomorphism, class(x,y) = σ(x) − σ(y)) is
/// verified exhaustively; a failure is an internal bug signal.
#[derive(Debug, Clone)]
pub struct GrothendieckRing {
    pub ring: FiniteSemiring,
    pub zero: usize,
    pub unity: Option<usize>,
    /// Additive inverse per ring element.
    pub neg: Vec<usize>,
    /// sigma[x] = class of (2x, x); a semiring homomorphism S → G(S).
    pub sigma: Vec<usize>,
    /// pair_class[x][y] = class of (x, y) = sigma(x) − sigma(y).
    pub pair_class: Vec<Vec<usize>>,
    /// One representative pair per class.
    pub reps: Vec<(usize, usize)>,
}

pub fn grothendieck(s: &FiniteSemiring) -> Result<GrothendieckRing> {
    let m = s.order();

    // u ~ v iff u + t = v + t for some t; then (x,y) ≈ (x',y') iff
    // (x + y') ~ (x' + y). The witness search is exhaustive over S.
    let mut cancel = vec![vec![false; m]; m];
    for u in 0..m {
        for v in 0..m {
            cancel[u][v] = (0..m).any(|t| s.add(u, t) == s.add(v, t));
        }
    }
    let approx = |x: usize, y: usize, x2: usize, y2: usize| cancel[s.add(x, y2)][s.add(x2, y)];

    // Assign classes by scanning pairs against representatives.
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut pair_class = vec![vec![usize::MAX; m]; m];
    for x in 0..m {
        for y in 0..m {
            let found = reps.iter().position(|&(rx, ry)| approx(x, y, rx, ry));
            pair_class[x][y] = match found {
                Some(c) => c,
                None => {
                    reps.push((x, y));
                    reps.len() - 1
                }
            };
        }
    }
    let classes = reps.len();

    // Defensive check: the relation as computed is already transitive, so
    // the class assignment must exactly reproduce it on every pair of pairs.
    for x in 0..m {
        for y in 0..m {
            for x2 in 0..m {
                for y2 in 0..m {
                    let same = pair_class[x][y] == pair_class[x2][y2];
                    if same != approx(x, y, x2, y2) {
                        return Err(Error::Internal(
                            "pair equivalence is not transitive as computed".into(),
                        ));
                    }
                }
            }
        }
    }

    let add_pairs = |p: (usize, usize), q: (usize, usize)| (s.add(p.0, q.0), s.add(p.1, q.1));
    let mul_pairs = |p: (usize, usize), q: (usize, usize)| {
        (
            s.add(s.mul(p.0, q.0), s.mul(p.1, q.1)),
            s.add(s.mul(p.0, q.1), s.mul(p.1, q.0)),
        )
    };

    let mut add = vec![vec![0usize; classes]; classes];
    let mut mul = vec![vec![0usize; classes]; classes];
    for i in 0..classes {
        for j in 0..classes {
            let sum = add_pairs(reps[i], reps[j]);
            let prod = mul_pairs(reps[i], reps[j]);
            add[i][j] = pair_class[sum.0][sum.1];
            mul[i][j] = pair_class[prod.0][prod.1];
        }
    }

    // Well-definedness across all members, not just representatives.
    for x in 0..m {
        for y in 0..m {
            let c = pair_class[x][y];
            for x2 in 0..m {
                for y2 in 0..m {
                    let d = pair_class[x2][y2];
                    let sum = add_pairs((x, y), (x2, y2));
                    let prod = mul_pairs((x, y), (x2, y2));
                    if add[c][d] != pair_class[sum.0][sum.1]
                        || mul[c][d] != pair_class[prod.0][prod.1]
                    {
                        return Err(Error::Internal(
                            "pair operations not constant on classes".into(),
                        ));
                    }
                }
            }
        }
    }

    let ring = FiniteSemiring::validate(add, mul)
        .map_err(|e| Error::Internal(format!("quotient tables violate axioms: {e}")))?;

    let zero = pair_class[0][0];
    for x in 0..m {
        if pair_class[x][x] != zero {
            return Err(Error::Internal("diagonal pairs split across classes".into()));
        }
    }

    let mut neg = vec![0usize; classes];
    for (i, &(x, y)) in reps.iter().enumerate() {
        neg[i] = pair_class[y][x];
        if ring.add(i, neg[i]) != zero {
            return Err(Error::Internal("missing additive inverse".into()));
        }
    }

    let sigma: Vec<usize> = (0..m)
        .map(|x| pair_class[s.add(x, x)][x])
        .collect();
    for x in 0..m {
        for y in 0..m {
            if sigma[s.add(x, y)] != ring.add(sigma[x], sigma[y])
                || sigma[s.mul(x, y)] != ring.mul(sigma[x], sigma[y])
            {
                return Err(Error::Internal("sigma is not a homomorphism".into()));
            }
            // (x, y) = sigma(x) - sigma(y).
            if pair_class[x][y] != ring.add(sigma[x], neg[sigma[y]]) {
                return Err(Error::Internal(
                    "pair class differs from sigma difference".into(),
                ));
            }
        }
    }

    let unity = s.unity().map(|u| sigma[u]).filter(|&su| {
        (0..classes).all(|c| ring.mul(su, c) == c)
    });

    Ok(GrothendieckRing {
        ring,
        zero,
        unity,
        neg,
        sigma,
        pair_class,
        reps,
    })
}

impl GrothendieckRing {
    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.ring.order() == 1
    }

    /// Every element of a finite ring is additively torsion: some k ≥ 1
    /// has k·g = zero. Verified by walking the additive orbit.
    pub fn additive_torsion(&self) -> bool {
        self.ring.elements().all(|g| {
            let orbit = super::profile::additive_cyclic(&self.ring, g);
            orbit.orbit.contains(&self.zero) || g == self.zero
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_collapses_to_the_trivial_ring() {
        let g = grothendieck(&FiniteSemiring::boolean()).unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.sigma, vec![g.zero, g.zero]);
    }

    #[test]
    fn z3_survives_with_injective_sigma() {
        let g = grothendieck(&FiniteSemiring::z_mod(3)).unwrap();
        assert_eq!(g.order(), 3);
        let mut seen = g.sigma.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 3);
        assert_eq!(g.unity, Some(g.sigma[1]));
    }

    #[test]
    fn trivial_semiring_gives_trivial_ring() {
        let one = FiniteSemiring::validate(vec![vec![0]], vec![vec![0]]).unwrap();
        let g = grothendieck(&one).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn truncated_naturals_collapse() {
        // In T2 the top is absorbing: x + 2 = 2 cancels everything, so
        // every pair (x, y) with x, y <= 2 merges by witness t = 2.
        let g = grothendieck(&FiniteSemiring::truncated_naturals(2)).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn z4_is_isomorphic_to_its_completion() {
        let g = grothendieck(&FiniteSemiring::z_mod(4)).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.additive_torsion());
    }

    #[test]
    fn inverses_exist_everywhere() {
        for s in [
            FiniteSemiring::boolean(),
            FiniteSemiring::z_mod(5),
            FiniteSemiring::truncated_naturals(3),
        ] {
            let g = grothendieck(&s).unwrap();
            for c in 0..g.order() {
                assert_eq!(g.ring.add(c, g.neg[c]), g.zero);
            }
            assert!(g.additive_torsion());
        }
    }
}
