use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Cone;
use crate::linalg::{in_span, span, IntVector, Subspace};
use crate::{Error, Result};

/// A face of a pointed cone, carrying everything needed to test membership
/// in its relatively open part without going back to the parent.
///
/// The relatively open face A = ri(support ∩ K) consists of the points of
/// the closed face on the strictly positive side of every parent facet
/// normal that does not vanish identically on the support. The apex face
/// has zero support and accepts exactly the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub dim: usize,
    pub support: Subspace,
    /// Extreme rays of the closed face (a subset of the parent's rays).
    pub rays: Vec<IntVector>,
    /// Parent facet normals vanishing identically on the support (indices
    /// into the parent cone's normal list, sorted).
    pub tight_set: Vec<usize>,
    /// Parent facet normals that must be strictly positive on the open face.
    pub strict_normals: Vec<IntVector>,
    /// An integer point in the relatively open face (the origin for the apex).
    pub sample: IntVector,
}

/// All faces of a pointed cone, ordered by (dimension, support basis).
/// The relatively open parts partition the cone.
#[derive(Debug, Clone)]
pub struct FaceDecomposition {
    cone: Cone,
    faces: Vec<Face>,
    by_tight_set: BTreeMap<Vec<usize>, usize>,
}

impl FaceDecomposition {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn apex(&self) -> &Face {
        &self.faces[0]
    }

    /// The unique face of maximal dimension.
    pub fn maximal_face(&self) -> &Face {
        self.faces.last().expect("at least the apex exists")
    }
}

/// Enumerates every face of the cone as an intersection of facets,
/// deduplicated by the set of extreme rays it contains.
pub fn face_decomposition(cone: &Cone) -> FaceDecomposition {
    let rays = cone.extreme_rays();
    let normals = cone.facet_normals();
    let nf = normals.len();

    // tight[i][j] = normal i vanishes on ray j
    let tight: Vec<Vec<bool>> = normals
        .iter()
        .map(|n| rays.iter().map(|r| n.dot(r).is_zero()).collect())
        .collect();

    let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    let mut raw_faces: Vec<Vec<usize>> = Vec::new();
    for subset in 0u64..(1u64 << nf) {
        let ray_set: Vec<usize> = (0..rays.len())
            .filter(|&j| (0..nf).all(|i| subset & (1 << i) == 0 || tight[i][j]))
            .collect();
        if seen.insert(ray_set.clone(), ()).is_none() {
            raw_faces.push(ray_set);
        }
    }

    let mut faces: Vec<Face> = raw_faces
        .into_iter()
        .map(|ray_set| {
            let face_rays: Vec<IntVector> = ray_set.iter().map(|&j| rays[j].clone()).collect();
            let support = span(cone.ambient(), &face_rays);
            let tight_set: Vec<usize> = (0..nf)
                .filter(|&i| ray_set.iter().all(|&j| tight[i][j]))
                .collect();
            let strict_normals: Vec<IntVector> = (0..nf)
                .filter(|i| !tight_set.contains(i))
                .map(|i| normals[i].clone())
                .collect();
            let sample = face_rays
                .iter()
                .fold(IntVector::zero(cone.ambient()), |acc, r| &acc + r);
            Face {
                id: 0,
                dim: support.dim(),
                support,
                rays: face_rays,
                tight_set,
                strict_normals,
                sample,
            }
        })
        .collect();

    faces.sort_by(|a, b| (a.dim, &a.support).cmp(&(b.dim, &b.support)));
    let mut by_tight_set = BTreeMap::new();
    for (id, f) in faces.iter_mut().enumerate() {
        f.id = id;
        by_tight_set.insert(f.tight_set.clone(), id);
    }

    debug_assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 1);
    debug_assert_eq!(faces.iter().filter(|f| f.dim == cone.dim()).count(), 1);

    FaceDecomposition {
        cone: cone.clone(),
        faces,
        by_tight_set,
    }
}

/// Membership of x in the relatively open face A = ri(support ∩ K).
pub fn ri_contains(face: &Face, x: &IntVector) -> bool {
    if !in_span(x, &face.support) {
        return false;
    }
    face.strict_normals.iter().all(|n| n.dot(x).is_positive())
}

/// The unique face whose relatively open part contains x. Errors when x is
/// outside the cone.
pub fn classify_point<'d>(decomp: &'d FaceDecomposition, x: &IntVector) -> Result<&'d Face> {
    if !decomp.cone.contains(x) {
        return Err(Error::PointOutsideCone(x.to_string()));
    }
    let tight: Vec<usize> = decomp
        .cone
        .facet_normals()
        .iter()
        .enumerate()
        .filter(|(_, n)| n.dot(x).is_zero())
        .map(|(i, _)| i)
        .collect();
    let id = decomp
        .by_tight_set
        .get(&tight)
        .copied()
        .ok_or_else(|| Error::Internal(format!("no face for tight set {tight:?}")))?;
    let face = &decomp.faces[id];
    debug_assert!(ri_contains(face, x));
    Ok(face)
}

/// Face summary used by reports.
#[derive(Debug, Clone, Serialize)]
pub struct FaceSummary {
    pub id: usize,
    pub dim: usize,
    pub support_basis: Vec<IntVector>,
    pub sample_point: IntVector,
}

impl Face {
    pub fn summary(&self) -> FaceSummary {
        FaceSummary {
            id: self.id,
            dim: self.dim,
            support_basis: self.support.basis().to_vec(),
            sample_point: self.sample.clone(),
        }
    }
}
