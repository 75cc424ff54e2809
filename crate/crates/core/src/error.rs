use thiserror::Error;

/// Errors shared by every layer of the library.
///
/// Witness searches that come up empty are *not* errors: they return
/// `Ok(None)` (reported as `exhausted`), so every variant here marks a
/// violated precondition, a capability gap, or a failed verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different rings")]
    MixedRings,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operation not supported by this ring: {0}")]
    UnsupportedCapability(&'static str),
    #[error("invalid ring parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent exceeds 2^16")]
    ExponentTooLarge,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("matrix block is not invertible")]
    NotInvertible,
    #[error("row or column is not unimodular")]
    NotUnimodular,
    #[error("inputs do not generate the full two-sided ideal")]
    NotTwoSidedUnimodular,
    #[error("third element of the triple must be nonzero")]
    ZeroC,
    #[error("witness does not satisfy its defining identities: {0}")]
    InvalidWitness(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("reduction did not reach the canonical form")]
    ReductionFailed,
    #[error("report is malformed: {0}")]
    BadReport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
