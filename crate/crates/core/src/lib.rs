//! Exact-arithmetic toolkit for affine monoids and commutative semirings.
//!
//! The crate is organised around a chain of constructions:
//!
//! * [`linalg`] — arbitrary-precision integer/rational linear algebra
//!   (Hermite normal form, kernels, subspace spans, lattice intersections),
//! * [`cone`] — rational polyhedral cones, double description, and the
//!   partition of a pointed cone into relatively open faces,
//! * [`monoid`] — affine monoids in `N₀ⁿ`, saturation with Hilbert bases,
//!   and the canonical decomposition along open faces,
//! * [`poly`] — sparse polynomial arithmetic in the monoid semirings
//!   `N[C]`/`Z[C]`, ideals and membership certificates,
//! * [`semiring`] — finite commutative semirings: validation, additive
//!   property classification, Grothendieck completion, congruence quotients
//!   of `N[C]`, and corpus enumeration,
//! * [`qring`] — subrings of `Q` in canonical `(n, P)` form,
//! * [`verify`] — seeded verification suites tying the above together.
//!
//! All arithmetic is exact; the crate contains no floating point.

pub mod cone;
pub mod error;
pub mod linalg;
pub mod monoid;
pub mod poly;
pub mod qring;
pub mod semiring;
pub mod util;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
