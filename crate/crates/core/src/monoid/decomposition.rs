use std::sync::OnceLock;

use serde::Serialize;

use super::saturation::SaturatedMonoid;
use crate::cone::{classify_point, face_decomposition, ri_contains, Face, FaceDecomposition};
use crate::linalg::{in_span, IntVector};
use crate::{Error, Result};

/// Search cap for the k of `kmin`; exceeding it signals an implementation
/// bug, not a mathematical failure, since termination is guaranteed.
const KMIN_CAP: u64 = 1_000_000;

/// One piece D = (A ∩ C) ∪ {0} of the canonical decomposition, where A is
/// a relatively open face of conv(C). The closure D̃ = ⟨D⟩ ∩ N₀ⁿ is
/// computed lazily and cached.
#[derive(Debug)]
pub struct DecompPiece {
    face: Face,
    dtilde: OnceLock<SaturatedMonoid>,
}

impl Clone for DecompPiece {
    fn clone(&self) -> Self {
        let cell = OnceLock::new();
        if let Some(v) = self.dtilde.get() {
            let _ = cell.set(v.clone());
        }
        DecompPiece {
            face: self.face.clone(),
            dtilde: cell,
        }
    }
}

impl DecompPiece {
    pub fn id(&self) -> usize {
        self.face.id
    }

    pub fn dim(&self) -> usize {
        self.face.dim
    }

    pub fn face(&self) -> &Face {
        &self.face
    }

    /// The closure D̃ = ⟨D⟩ ∩ N₀ⁿ = support ∩ N₀ⁿ, with its Hilbert basis.
    pub fn dtilde(&self) -> &SaturatedMonoid {
        self.dtilde.get_or_init(|| {
            SaturatedMonoid::from_subspace_orthant(&self.face.support)
                .expect("face support is a valid subspace")
        })
    }

    /// Membership in D: zero, or a monoid point in the relatively open face.
    pub fn member(&self, alpha: &IntVector) -> bool {
        if alpha.is_zero() {
            return true;
        }
        alpha.is_nonnegative() && ri_contains(&self.face, alpha)
    }
}

/// The canonical decomposition of a saturated monoid: one piece per
/// relatively open face of conv(C). The nonzero members of the pieces
/// partition C̃ \ {0}; pairwise intersections are {0}.
#[derive(Debug, Clone)]
pub struct CanonicalDecomposition {
    monoid: SaturatedMonoid,
    faces: FaceDecomposition,
    pieces: Vec<DecompPiece>,
}

pub fn canonical_decomposition(s: &SaturatedMonoid) -> CanonicalDecomposition {
    let faces = face_decomposition(s.cone());
    let pieces = faces
        .faces()
        .iter()
        .map(|f| DecompPiece {
            face: f.clone(),
            dtilde: OnceLock::new(),
        })
        .collect();
    CanonicalDecomposition {
        monoid: s.clone(),
        faces,
        pieces,
    }
}

impl CanonicalDecomposition {
    pub fn monoid(&self) -> &SaturatedMonoid {
        &self.monoid
    }

    pub fn pieces(&self) -> &[DecompPiece] {
        &self.pieces
    }

    pub fn piece(&self, id: usize) -> &DecompPiece {
        &self.pieces[id]
    }

    /// The dim-0 piece {0}.
    pub fn apex_piece(&self) -> &DecompPiece {
        &self.pieces[0]
    }

    /// The unique piece whose relatively open part contains α; zero maps
    /// to the apex piece.
    pub fn classify(&self, alpha: &IntVector) -> Result<&DecompPiece> {
        if !self.monoid.member(alpha) {
            return Err(Error::NotInMonoid(alpha.to_string()));
        }
        if alpha.is_zero() {
            return Ok(self.apex_piece());
        }
        let face = classify_point(&self.faces, alpha)?;
        Ok(&self.pieces[face.id])
    }

    /// Minimal k ≥ 1 with kα + γ ∈ D, for α ∈ D \ {0} and γ ∈ D̃.
    /// Incremental search; termination is guaranteed, so the cap converts a
    /// hypothetical bug into a visible error instead of a hang.
    pub fn kmin(&self, piece: &DecompPiece, alpha: &IntVector, gamma: &IntVector) -> Result<u64> {
        if alpha.is_zero() || !piece.member(alpha) {
            return Err(Error::Precondition {
                what: "kmin",
                detail: format!("alpha {alpha} must lie in the piece minus zero"),
            });
        }
        if !piece.dtilde().member(gamma) {
            return Err(Error::Precondition {
                what: "kmin",
                detail: format!("gamma {gamma} must lie in the piece closure"),
            });
        }
        let mut x = gamma + alpha;
        for k in 1..=KMIN_CAP {
            if piece.member(&x) {
                return Ok(k);
            }
            x = &x + alpha;
        }
        Err(Error::TerminationBound(KMIN_CAP))
    }

    /// For α ∈ D \ {0} and β ∈ C̃ \ D̃, the sum α + β lands in a piece of
    /// strictly larger dimension; returns that piece.
    pub fn sum_escalation(
        &self,
        piece: &DecompPiece,
        alpha: &IntVector,
        beta: &IntVector,
    ) -> Result<&DecompPiece> {
        if alpha.is_zero() || !piece.member(alpha) {
            return Err(Error::Precondition {
                what: "sum_escalation",
                detail: format!("alpha {alpha} must lie in the piece minus zero"),
            });
        }
        if !self.monoid.member(beta) {
            return Err(Error::Precondition {
                what: "sum_escalation",
                detail: format!("beta {beta} must lie in the saturated monoid"),
            });
        }
        if in_span(beta, &piece.face().support) {
            return Err(Error::Precondition {
                what: "sum_escalation",
                detail: format!("beta {beta} must lie outside the piece closure"),
            });
        }
        let target = self.classify(&(alpha + beta))?;
        if target.dim() <= piece.dim() {
            return Err(Error::EscalationFailed {
                piece_dim: piece.dim(),
                target_dim: target.dim(),
            });
        }
        Ok(target)
    }

    pub fn summary(&self, with_dtilde: bool) -> DecompositionSummary {
        DecompositionSummary {
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceSummary {
                    id: p.id(),
                    dim: p.dim(),
                    support_basis: p.face().support.basis().to_vec(),
                    sample_point: p.face().sample.clone(),
                    dtilde_basis: with_dtilde.then(|| p.dtilde().hilbert_basis().to_vec()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSummary {
    pub pieces: Vec<PieceSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PieceSummary {
    pub id: usize,
    pub dim: usize,
    pub support_basis: Vec<IntVector>,
    pub sample_point: IntVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dtilde_basis: Option<Vec<IntVector>>,
}
