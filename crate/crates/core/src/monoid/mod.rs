//! Affine monoids C ⊆ N₀ⁿ: membership, saturation with Hilbert basis,
//! and the canonical decomposition along the relatively open faces of
//! conv(C).

mod decomposition;
mod saturation;

pub use decomposition::{
    canonical_decomposition, CanonicalDecomposition, DecompPiece, PieceSummary,
};
pub use saturation::{is_saturated, saturate, SaturatedMonoid};

use std::collections::HashSet;

use crate::cone::Cone;
use crate::linalg::{in_span, span, IntVector, Subspace};
use crate::{Error, Result};

/// A finitely generated submonoid of N₀ⁿ, with its span and cone cached.
/// Zero generators and duplicates are dropped at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient: usize,
    generators: Vec<IntVector>,
    span: Subspace,
    cone: Cone,
}

impl AffineMonoid {
    pub fn new(ambient: usize, generators: &[IntVector]) -> Result<AffineMonoid> {
        let cone = Cone::from_generators(ambient, generators)?;
        let generators = cone.generators().to_vec();
        let span = span(ambient, &generators);
        Ok(AffineMonoid {
            ambient,
            generators,
            span,
            cone,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Exact membership in the generated monoid: is α a nonnegative-integer
    /// combination of the generators? Decided by search over the
    /// componentwise box [0, α]; exponential in the worst case but bounded,
    /// which is adequate at desk scale.
    pub fn member(&self, alpha: &IntVector) -> bool {
        debug_assert_eq!(alpha.rank(), self.ambient);
        if !alpha.is_nonnegative() {
            return false;
        }
        if alpha.is_zero() {
            return true;
        }
        if !in_span(alpha, &self.span) {
            return false;
        }
        let mut visited: HashSet<IntVector> = HashSet::new();
        let mut stack = vec![alpha.clone()];
        visited.insert(alpha.clone());
        while let Some(t) = stack.pop() {
            for g in &self.generators {
                if !g.le_componentwise(&t) {
                    continue;
                }
                let rest = &t - g;
                if rest.is_zero() {
                    return true;
                }
                if visited.insert(rest.clone()) {
                    stack.push(rest);
                }
            }
        }
        false
    }

    /// Parses the monoid text format: first line `n <rank>`, then one
    /// generator per line as space-separated nonnegative integers.
    pub fn parse(text: &str) -> Result<AffineMonoid> {
        let mut lines = text.lines().filter(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
        let mut parts = header.split_whitespace();
        let tag = parts.next();
        if tag != Some("n") {
            return Err(Error::Parse(format!(
                "expected header `n <rank>`, got {header:?}"
            )));
        }
        let rank: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("missing rank in header".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad rank: {e}")))?;
        let mut gens = Vec::new();
        for (i, line) in lines.enumerate() {
            let coords = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<num_bigint::BigInt>()
                        .map_err(|e| Error::Parse(format!("line {}: bad integer {t:?}: {e}", i + 2)))
                })
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != rank {
                return Err(Error::Parse(format!(
                    "line {}: expected {rank} coordinates, got {}",
                    i + 2,
                    coords.len()
                )));
            }
            gens.push(IntVector::new(coords));
        }
        AffineMonoid::new(rank, &gens)
    }

    /// Renders the monoid text format; inverse of [`AffineMonoid::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.ambient);
        for g in &self.generators {
            let row: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}
