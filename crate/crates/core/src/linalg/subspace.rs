use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::{integer_kernel, IntMatrix, RatMatrix};
use super::vector::IntVector;

/// A rational vector subspace of Rⁿ in canonical form: the basis is the
/// reduced row echelon form over Q, scaled to primitive integer rows.
/// Equal subspaces therefore have identical representations, so equality
/// is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<IntVector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| IntVector::unit(ambient, i)).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// True iff other ⊆ self.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| in_span(v, self))
    }
}

/// The subspace of Qⁿ generated by the given vectors. Empty input yields
/// the zero subspace.
pub fn span(ambient: usize, vectors: &[IntVector]) -> Subspace {
    debug_assert!(vectors.iter().all(|v| v.rank() == ambient));
    if vectors.is_empty() {
        return Subspace::zero(ambient);
    }
    let m = RatMatrix::from_int_rows(vectors);
    Subspace {
        ambient,
        basis: m.rref_primitive_rows(),
    }
}

/// True iff v is a rational combination of the subspace basis.
pub fn in_span(v: &IntVector, w: &Subspace) -> bool {
    debug_assert_eq!(v.rank(), w.ambient);
    // Reduce v against the echelon basis; membership iff the residual is 0.
    let mut residual: Vec<BigRational> = v.to_rational();
    for row in &w.basis {
        let p = row
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("basis rows are nonzero");
        if residual[p].is_zero() {
            continue;
        }
        let f = &residual[p] / BigRational::from_integer(row.get(p).clone());
        for (res, c) in residual.iter_mut().zip(row.coords()) {
            let delta = &f * BigRational::from_integer(c.clone());
            *res -= delta;
        }
    }
    residual.iter().all(|c| c.is_zero())
}

/// A lattice basis of W ∩ Zⁿ, a free abelian group of rank dim W.
///
/// Computed by a double integer kernel: first a basis A of the orthogonal
/// complement lattice {y : B·y = 0}, then the kernel of A, which is the
/// saturated lattice (W^⊥)^⊥ ∩ Zⁿ = W ∩ Zⁿ.
pub fn lattice_intersection(w: &Subspace) -> Vec<IntVector> {
    if w.dim() == 0 {
        return Vec::new();
    }
    let b = IntMatrix::from_rows(&w.basis);
    let complement = integer_kernel(&b);
    if complement.is_empty() {
        // W is the full space.
        return (0..w.ambient).map(|i| IntVector::unit(w.ambient, i)).collect();
    }
    let a = IntMatrix::from_rows(&complement);
    integer_kernel(&a)
}

/// Solves B·x = rhs over Q for x, where B has the subspace basis as rows.
/// Used to express points of W in basis coordinates.
pub fn basis_coordinates(w: &Subspace, v: &IntVector) -> Option<Vec<BigRational>> {
    // Want coefficients c with Σ c_i · basis_i = v, i.e. Bᵀ·c = v.
    let bt = RatMatrix::new(
        (0..w.ambient)
            .map(|j| {
                w.basis
                    .iter()
                    .map(|row| BigRational::from_integer(row.get(j).clone()))
                    .collect()
            })
            .collect(),
    );
    bt.solve(&v.to_rational())
}

/// Checks the solution exists and is integral; used where callers know the
/// point lies in the lattice spanned by the rows.
pub fn integer_coordinates(rows: &[IntVector], v: &IntVector) -> Option<IntVector> {
    if rows.is_empty() {
        return v.is_zero().then(|| IntVector::zero(0));
    }
    let ambient = rows[0].rank();
    let mut cols = Vec::with_capacity(ambient);
    for j in 0..ambient {
        cols.push(rows.iter().map(|r| r.get(j).clone()).collect::<Vec<_>>());
    }
    let bt = IntMatrix::new(cols); // ambient × k, (Bᵀ)
    super::matrix::solve_integer(&bt, v)
}
