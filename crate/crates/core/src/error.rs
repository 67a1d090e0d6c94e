use thiserror::Error;

/// Errors produced by the library.
///
/// Semi-decisions (congruence caps, bounded ideal membership) are *values*,
/// not errors; only genuine contract violations end up here.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("zero vector has no primitive form")]
    ZeroVectorPrimitive,

    #[error("generators must be in the nonnegative orthant (offending generator {0})")]
    NegativeGenerator(String),

    #[error("point outside cone: {0}")]
    PointOutsideCone(String),

    #[error("not in monoid: {0}")]
    NotInMonoid(String),

    #[error("{what} violates precondition: {detail}")]
    Precondition { what: &'static str, detail: String },

    #[error("termination bound exceeded after {0} steps (implementation bug, not a math failure)")]
    TerminationBound(u64),

    #[error("sum escalation did not increase dimension: piece dim {piece_dim}, target dim {target_dim}")]
    EscalationFailed { piece_dim: usize, target_dim: usize },

    #[error("exponent {0} is not in C + D~")]
    NotInCPlusDtilde(String),

    #[error("polynomial in the naturals domain cannot take coefficient {0}")]
    NaturalsDomain(String),

    #[error("semiring axioms violated ({} instance(s)); first: {}", .0.len(), .0[0])]
    SemiringAxioms(Vec<String>),

    #[error("semiring has no unity")]
    NoUnity,

    #[error("all generators are integers: subring of Z, descriptor form does not apply")]
    IntegerSubring,

    #[error("empty or all-zero generator list")]
    NoGenerators,

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
