//! Exact integer and rational linear algebra: spans, kernels, Hermite
//! normal form, lattice intersections.

mod matrix;
mod subspace;
mod vector;

pub use matrix::{hnf, integer_kernel, solve_integer, IntMatrix, RatMatrix};
pub use subspace::{
    basis_coordinates, in_span, integer_coordinates, lattice_intersection, span, Subspace,
};
pub use vector::IntVector;
