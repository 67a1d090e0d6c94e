use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::AffineMonoid;
use crate::cone::extreme_rays_from_inequalities;
use crate::linalg::{IntVector, Subspace};
use crate::Result;

/// The saturation C̃ of an affine monoid: all lattice points of conv(C),
/// i.e. the smallest monoid containing C with the property that kα ∈ C̃
/// implies α ∈ C̃. Carries the Hilbert basis: the unique minimal
/// generating set (elements that are not sums of two nonzero members).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturatedMonoid {
    base: AffineMonoid,
    hilbert_basis: Vec<IntVector>,
}

impl SaturatedMonoid {
    pub fn base(&self) -> &AffineMonoid {
        &self.base
    }

    pub fn hilbert_basis(&self) -> &[IntVector] {
        &self.hilbert_basis
    }

    pub fn ambient(&self) -> usize {
        self.base.ambient()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn cone(&self) -> &crate::cone::Cone {
        self.base.cone()
    }

    /// Membership in C̃: a nonnegative lattice point of the cone.
    pub fn member(&self, alpha: &IntVector) -> bool {
        alpha.is_nonnegative() && self.base.cone().contains(alpha)
    }

    /// The saturated monoid of all nonnegative lattice points of a rational
    /// subspace, W ∩ N₀ⁿ. Used for the closures D̃ of decomposition pieces.
    pub fn from_subspace_orthant(w: &Subspace) -> Result<SaturatedMonoid> {
        let n = w.ambient();
        if w.dim() == 0 {
            let base = AffineMonoid::new(n, &[])?;
            return Ok(SaturatedMonoid {
                base,
                hilbert_basis: Vec::new(),
            });
        }
        // Extreme rays of W ∩ R₊ⁿ in lattice coordinates: for x = Σ y_i b_i
        // the orthant conditions are n linear inequalities in y.
        let lattice = crate::linalg::lattice_intersection(w);
        let d = lattice.len();
        let constraints: Vec<IntVector> = (0..n)
            .map(|j| IntVector::new(lattice.iter().map(|b| b.get(j).clone()).collect()))
            .collect();
        let rays_coord = extreme_rays_from_inequalities(&constraints, d);
        let rays: Vec<IntVector> = rays_coord
            .iter()
            .map(|y| {
                let mut acc = IntVector::zero(n);
                for (yi, b) in y.coords().iter().zip(&lattice) {
                    acc = &acc + &b.scale(yi);
                }
                acc.primitive().expect("nonzero ray")
            })
            .collect();
        let base = AffineMonoid::new(n, &rays)?;
        Ok(saturate(&base))
    }
}

/// Computes the saturation of a generated monoid together with its Hilbert
/// basis. Every irreducible element lies in the zonotope spanned by the
/// primitive extreme rays, so enumeration over that box is exhaustive.
pub fn saturate(m: &AffineMonoid) -> SaturatedMonoid {
    let n = m.ambient();
    let rays = m.cone().extreme_rays();
    if rays.is_empty() {
        return SaturatedMonoid {
            base: m.clone(),
            hilbert_basis: Vec::new(),
        };
    }
    let bound = rays
        .iter()
        .fold(IntVector::zero(n), |acc, r| &acc + r);
    let points = lattice_points_in_box(m, &bound);

    let mut basis: Vec<IntVector> = Vec::new();
    for x in &points {
        let reducible = points
            .iter()
            .take_while(|y| *y <= x)
            .any(|y| y != x && y.le_componentwise(x) && points.contains(&(x - y)));
        if !reducible {
            basis.push(x.clone());
        }
    }
    basis.sort();
    SaturatedMonoid {
        base: m.clone(),
        hilbert_basis: basis,
    }
}

/// True iff the generated monoid already equals its saturation, i.e.
/// kα ∈ C implies α ∈ C.
pub fn is_saturated(m: &AffineMonoid) -> bool {
    saturate(m).hilbert_basis().iter().all(|b| m.member(b))
}

/// Nonzero lattice points of the cone inside the componentwise box
/// [0, bound].
fn lattice_points_in_box(m: &AffineMonoid, bound: &IntVector) -> BTreeSet<IntVector> {
    let n = m.ambient();
    let limits: Vec<u64> = bound
        .coords()
        .iter()
        .map(|c| {
            c.to_u64()
                .expect("zonotope bound fits in u64 at desk scale")
        })
        .collect();
    let volume: u128 = limits.iter().map(|&l| l as u128 + 1).product();
    assert!(
        volume <= 100_000_000,
        "saturation box of {volume} points exceeds desk scale"
    );
    let mut out = BTreeSet::new();
    let mut current = vec![0u64; n];
    loop {
        let candidate = IntVector::new(current.iter().map(|&c| BigInt::from(c)).collect());
        if !candidate.is_zero() && m.cone().contains(&candidate) {
            out.insert(candidate);
        }
        // Odometer increment.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < limits[i] {
                current[i] += 1;
                break;
            }
            current[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    fn monoid(gens: &[&[i64]]) -> AffineMonoid {
        let rank = gens[0].len();
        AffineMonoid::new(rank, &gens.iter().map(|g| iv(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn saturation_fills_the_parity_holes() {
        let s = saturate(&monoid(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(s.hilbert_basis(), &[iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn primitive_ray_is_its_own_basis() {
        let s = saturate(&monoid(&[&[1, 1]]));
        assert_eq!(s.hilbert_basis(), &[iv(&[1, 1])]);
    }

    #[test]
    fn doubled_ray_saturates_to_primitive() {
        let s = saturate(&monoid(&[&[2, 2]]));
        assert_eq!(s.hilbert_basis(), &[iv(&[1, 1])]);
        assert!(s.member(&iv(&[1, 1])));
    }

    #[test]
    fn wedge_hilbert_basis_has_inner_vector() {
        let s = saturate(&monoid(&[&[1, 0], &[1, 2]]));
        assert_eq!(
            s.hilbert_basis(),
            &[iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2])]
        );
        assert!(s.member(&iv(&[3, 2])));
        assert!(!s.member(&iv(&[1, 3])));
    }

    #[test]
    fn member_examples_on_diagonal() {
        let s = saturate(&monoid(&[&[1, 1]]));
        assert!(s.member(&iv(&[3, 3])));
        assert!(!s.member(&iv(&[2, 3])));
        assert!(s.member(&iv(&[0, 0])));
    }

    #[test]
    fn is_saturated_examples() {
        assert!(!is_saturated(&monoid(&[&[2, 0], &[0, 2], &[1, 1]])));
        assert!(is_saturated(&monoid(&[&[1, 0], &[0, 1]])));
        assert!(!is_saturated(&monoid(&[&[2, 2]])));
        assert!(is_saturated(&monoid(&[&[1, 0], &[1, 1], &[1, 2]])));
    }

    #[test]
    fn saturation_is_idempotent() {
        for gens in [
            vec![iv(&[2, 0]), iv(&[0, 2]), iv(&[1, 1])],
            vec![iv(&[1, 0]), iv(&[1, 2])],
            vec![iv(&[2, 2])],
        ] {
            let s = saturate(&AffineMonoid::new(2, &gens).unwrap());
            let regen = AffineMonoid::new(2, s.hilbert_basis()).unwrap();
            let s2 = saturate(&regen);
            assert_eq!(s.hilbert_basis(), s2.hilbert_basis());
        }
    }

    #[test]
    fn hilbert_basis_generates_small_points() {
        // Brute-force generation check at height <= 6 on the wedge.
        let s = saturate(&monoid(&[&[1, 0], &[1, 2]]));
        let regen = AffineMonoid::new(2, s.hilbert_basis()).unwrap();
        for x in 0..=6i64 {
            for y in 0..=6i64 {
                let p = iv(&[x, y]);
                assert_eq!(s.member(&p), regen.member(&p), "at {p}");
            }
        }
    }

    #[test]
    fn subspace_orthant_monoid_of_a_line() {
        let w = crate::linalg::span(2, &[iv(&[1, 2])]);
        let s = SaturatedMonoid::from_subspace_orthant(&w).unwrap();
        assert_eq!(s.hilbert_basis(), &[iv(&[1, 2])]);
        assert!(s.member(&iv(&[2, 4])));
        assert!(!s.member(&iv(&[2, 3])));
    }

    #[test]
    fn subspace_orthant_monoid_of_full_plane() {
        let w = Subspace::full(2);
        let s = SaturatedMonoid::from_subspace_orthant(&w).unwrap();
        assert_eq!(s.hilbert_basis(), &[iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn subspace_orthant_monoid_of_zero_space() {
        let s = SaturatedMonoid::from_subspace_orthant(&Subspace::zero(2)).unwrap();
        assert!(s.hilbert_basis().is_empty());
        assert!(s.member(&iv(&[0, 0])));
        assert!(!s.member(&iv(&[1, 0])));
    }
}
