//! Rational polyhedral cone geometry: extreme rays, facet normals, the
//! face lattice, and the partition of a pointed cone into relatively open
//! faces.

mod dd;
mod face;

pub use dd::extreme_rays_from_inequalities;
pub use face::{classify_point, face_decomposition, ri_contains, Face, FaceDecomposition};

use num_traits::{Signed, Zero};

use crate::linalg::{
    in_span, integer_coordinates, lattice_intersection, span, IntVector, RatMatrix, Subspace,
};
use crate::{Error, Result};

/// A pointed rational polyhedral cone conv(G) for generators G ⊆ N₀ⁿ.
///
/// Membership is exact: x ∈ cone ⟺ x ∈ span(G) and every facet normal is
/// nonnegative on x. Extreme rays and inner-pointing facet normals are
/// computed once, by the double description method in coordinates of the
/// lattice span(G) ∩ Zⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    generators: Vec<IntVector>,
    span: Subspace,
    lattice_basis: Vec<IntVector>,
    extreme_rays: Vec<IntVector>,
    facet_normals: Vec<IntVector>,
}

impl Cone {
    /// Builds the cone of all nonnegative rational combinations of `gens`.
    /// Zero generators and duplicates are dropped; a generator with a
    /// negative coordinate is rejected.
    pub fn from_generators(ambient: usize, gens: &[IntVector]) -> Result<Cone> {
        for g in gens {
            g.check_rank(ambient)?;
            if !g.is_nonnegative() {
                return Err(Error::NegativeGenerator(g.to_string()));
            }
        }
        let mut cleaned: Vec<IntVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        cleaned.sort();
        cleaned.dedup();

        let span = span(ambient, &cleaned);
        let dim = span.dim();
        if dim == 0 {
            return Ok(Cone {
                ambient,
                generators: cleaned,
                span,
                lattice_basis: Vec::new(),
                extreme_rays: Vec::new(),
                facet_normals: Vec::new(),
            });
        }

        let lattice_basis = lattice_intersection(&span);
        debug_assert_eq!(lattice_basis.len(), dim);
        let gen_coords: Vec<IntVector> = cleaned
            .iter()
            .map(|g| {
                integer_coordinates(&lattice_basis, g)
                    .expect("generators lie in the span lattice")
            })
            .collect();

        // Facet normals of the cone are the extreme rays of the dual cone
        // {y : g·y >= 0 for all generators g}, computed in coordinates.
        let normal_coords = extreme_rays_from_inequalities(&gen_coords, dim);
        let facet_normals = normal_coords
            .iter()
            .map(|eta| pull_back_functional(&lattice_basis, eta))
            .collect::<Result<Vec<_>>>()?;

        // A generator direction is an extreme ray iff the normals tight at
        // it span a hyperplane of the cone's span.
        let mut extreme_rays: Vec<IntVector> = Vec::new();
        for (g, gc) in cleaned.iter().zip(&gen_coords) {
            let tight: Vec<IntVector> = normal_coords
                .iter()
                .filter(|eta| eta.dot(gc).is_zero())
                .cloned()
                .collect();
            let tight_rank = if tight.is_empty() {
                0
            } else {
                RatMatrix::from_int_rows(&tight).rank()
            };
            if tight_rank == dim - 1 {
                let p = g.primitive().expect("nonzero generator");
                if !extreme_rays.contains(&p) {
                    extreme_rays.push(p);
                }
            }
        }
        extreme_rays.sort();

        let mut facet_normals = facet_normals;
        facet_normals.sort();

        Ok(Cone {
            ambient,
            generators: cleaned,
            span,
            lattice_basis,
            extreme_rays,
            facet_normals,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Basis of span ∩ Zⁿ.
    pub fn lattice_basis(&self) -> &[IntVector] {
        &self.lattice_basis
    }

    pub fn extreme_rays(&self) -> &[IntVector] {
        &self.extreme_rays
    }

    /// Inner-pointing facet normals; together with the span they cut out
    /// the cone.
    pub fn facet_normals(&self) -> &[IntVector] {
        &self.facet_normals
    }

    /// Exact membership test.
    pub fn contains(&self, x: &IntVector) -> bool {
        debug_assert_eq!(x.rank(), self.ambient);
        if !in_span(x, &self.span) {
            return false;
        }
        self.facet_normals
            .iter()
            .all(|eta| !eta.dot(x).is_negative())
    }
}

/// Finds an ambient integer vector w with B·w = eta for the lattice basis
/// rows B; w represents the coordinate functional eta on span(B).
fn pull_back_functional(lattice_basis: &[IntVector], eta: &IntVector) -> Result<IntVector> {
    let b = RatMatrix::from_int_rows(lattice_basis);
    let rhs = eta.to_rational();
    let sol = b
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("facet normal pull-back failed".into()))?;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;
    let lcm = sol.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    IntVector::new(sol.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
        .primitive()
        .map_err(|_| Error::Internal("zero facet normal".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn wedge_rays_and_normals() {
        let cone = Cone::from_generators(2, &[iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert_eq!(cone.extreme_rays(), &[iv(&[1, 0]), iv(&[1, 2])]);
        assert_eq!(cone.facet_normals(), &[iv(&[0, 1]), iv(&[2, -1])]);
        // Every generator satisfies all normals; every normal vanishes on
        // some extreme ray.
        for g in cone.generators() {
            assert!(cone.facet_normals().iter().all(|n| !n.dot(g).is_negative()));
        }
        for n in cone.facet_normals() {
            assert!(cone.extreme_rays().iter().any(|r| n.dot(r).is_zero()));
        }
    }

    #[test]
    fn interior_generator_is_not_extreme() {
        let cone = Cone::from_generators(2, &[iv(&[2, 0]), iv(&[1, 1]), iv(&[0, 3])]).unwrap();
        assert_eq!(cone.extreme_rays(), &[iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn zero_cone() {
        let cone = Cone::from_generators(2, &[iv(&[0, 0])]).unwrap();
        assert!(cone.is_zero());
        assert!(cone.extreme_rays().is_empty());
        assert_eq!(cone.dim(), 0);
        assert!(cone.contains(&iv(&[0, 0])));
        assert!(!cone.contains(&iv(&[1, 0])));
    }

    #[test]
    fn negative_generator_rejected() {
        let err = Cone::from_generators(2, &[iv(&[1, -1])]).unwrap_err();
        assert!(matches!(err, Error::NegativeGenerator(_)));
    }

    #[test]
    fn membership_wedge() {
        let cone = Cone::from_generators(2, &[iv(&[1, 0]), iv(&[1, 2])]).unwrap();
        assert!(cone.contains(&iv(&[3, 2]))); // 0 <= 2 <= 6
        assert!(!cone.contains(&iv(&[1, 3]))); // 3 > 2
        assert!(cone.contains(&iv(&[0, 0])));
    }

    #[test]
    fn membership_on_a_ray_cone_needs_span() {
        let cone = Cone::from_generators(2, &[iv(&[1, 1])]).unwrap();
        assert!(cone.contains(&iv(&[3, 3])));
        assert!(!cone.contains(&iv(&[1, 2])));
        assert_eq!(cone.dim(), 1);
        assert_eq!(cone.extreme_rays(), &[iv(&[1, 1])]);
    }

    #[test]
    fn duplicate_and_zero_generators_dropped() {
        let cone =
            Cone::from_generators(2, &[iv(&[0, 0]), iv(&[2, 2]), iv(&[1, 1]), iv(&[1, 1])]).unwrap();
        assert_eq!(cone.generators(), &[iv(&[1, 1]), iv(&[2, 2])]);
        assert_eq!(cone.extreme_rays(), &[iv(&[1, 1])]);
    }

    #[test]
    fn lower_dimensional_cone_in_three_space() {
        // Plane cone spanned by (1,0,1) and (0,1,1) inside R^3.
        let cone = Cone::from_generators(3, &[iv(&[1, 0, 1]), iv(&[0, 1, 1])]).unwrap();
        assert_eq!(cone.dim(), 2);
        assert!(cone.contains(&iv(&[1, 1, 2])));
        assert!(!cone.contains(&iv(&[1, 1, 1]))); // not in the span
        assert!(!cone.contains(&iv(&[2, 1, 1]))); // also off the span
        assert_eq!(cone.extreme_rays().len(), 2);
        assert_eq!(cone.facet_normals().len(), 2);
    }
}
