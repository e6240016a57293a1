use thiserror::Error;

use crate::ring::RingVec;

/// Errors raised across the crate.
///
/// Indices carried by the condition violations are zero-based; the `Display`
/// output prints them one-based to match matrix notation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: expected {expected} residues per element, got {found}")]
    RingMismatch { expected: usize, found: usize },

    #[error("residue {value} out of range for factor Z{modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("enumeration of {requested} items exceeds budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("condition (i) violated: S entry at row {}, column {} is not in the ideal generated by row {} of H", .row + 1, .col + 1, .row + 1)]
    ConditionIViolation { row: usize, col: usize },

    #[error("condition (ii) violated: columns {} and {} of S are equal", .first + 1, .second + 1)]
    ConditionIIViolation { first: usize, second: usize },

    #[error("condition (iii) violated: relation {syzygy} among the rows of H does not annihilate the rows of S")]
    ConditionIIIViolation { syzygy: RingVec },

    #[error("invalid code presentation: {0}")]
    InvalidPresentation(String),

    #[error("supplied generators do not span the dual of the partial kernel")]
    DualMismatch,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("degenerate code: a single codeword has no minimum distance")]
    DegenerateCode,

    #[error("no codeword within radius {radius} of the received word")]
    BeyondRadius { radius: usize },

    #[error("non-integer enumerator coefficient at weight {weight}: {value}")]
    NonIntegerCoefficient { weight: usize, value: f64 },

    #[error("code is not linear")]
    NotLinear,
}

pub type Result<T> = std::result::Result<T, Error>;
