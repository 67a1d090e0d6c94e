use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::SparsePoly;
use crate::linalg::{in_span, IntVector};
use crate::monoid::{AffineMonoid, CanonicalDecomposition, DecompPiece};
use crate::{Error, Result};

const SHIFT_CAP: u64 = 1_000_000;

/// Moves a polynomial with support in C + D̃ into Z[C] by multiplying with
/// x^(kα): returns the minimal k ≥ 1 such that every shifted exponent lies
/// in the generated monoid c, together with the shifted polynomial.
///
/// α must be a nonzero element of the piece D; every exponent of f must
/// decompose as β + γ with β ∈ c and γ ∈ D̃ (searched exactly over the
/// componentwise box), otherwise the shift is not guaranteed to land.
pub fn shift_into(
    decomp: &CanonicalDecomposition,
    piece: &DecompPiece,
    f: &SparsePoly,
    alpha: &IntVector,
    c: &AffineMonoid,
) -> Result<(u64, SparsePoly)> {
    let rank = c.ambient();
    if f.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            got: f.rank(),
        });
    }
    alpha.check_rank(rank)?;
    if alpha.is_zero() || !piece.member(alpha) {
        return Err(Error::Precondition {
            what: "shift_into",
            detail: format!("alpha {alpha} must lie in the piece minus zero"),
        });
    }
    debug_assert!(decomp.monoid().member(alpha));

    for e in f.exponents() {
        if !decomposes_over(c, piece, e) {
            return Err(Error::NotInCPlusDtilde(e.to_string()));
        }
    }

    if f.is_zero() {
        return Ok((1, f.shift_exponents(alpha)?));
    }

    let mut shift = alpha.clone();
    for k in 1..=SHIFT_CAP {
        if f.exponents().all(|e| c.member(&(e + &shift))) {
            return Ok((k, f.shift_exponents(&shift)?));
        }
        shift = &shift + alpha;
    }
    Err(Error::TerminationBound(SHIFT_CAP))
}

/// Does e = β + γ for some β in the generated monoid and γ in the piece
/// closure D̃ = support ∩ N₀ⁿ? Decided by enumeration of γ over [0, e].
fn decomposes_over(c: &AffineMonoid, piece: &DecompPiece, e: &IntVector) -> bool {
    let support = &piece.face().support;
    let limits: Vec<u64> = e
        .coords()
        .iter()
        .map(|x| x.to_u64().expect("desk-scale exponent"))
        .collect();
    let n = limits.len();
    let mut current = vec![0u64; n];
    loop {
        let gamma = IntVector::new(current.iter().map(|&x| BigInt::from(x)).collect());
        if in_span(&gamma, support) && c.member(&(e - &gamma)) {
            return true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return false;
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

/// Convenience for tests and the CLI: shift over the saturated monoid
/// itself, i.e. c generated by the Hilbert basis.
pub fn hilbert_generated(decomp: &CanonicalDecomposition) -> Result<AffineMonoid> {
    AffineMonoid::new(
        decomp.monoid().ambient(),
        decomp.monoid().hilbert_basis(),
    )
}
