use crate::set::ElementSet;

/// Library-wide error type.
///
/// `InvariantViolation` is special: it means a proven statement failed on a
/// concrete instance, which indicates a bug in this library (or a genuinely
/// publishable discovery). Callers should treat it as fatal rather than
/// recoverable input trouble.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("universe mismatch: expected ground size {expected}, got {got}")]
    UniverseMismatch { expected: usize, got: usize },

    #[error("ground set too large for this routine: n={n}, cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("empty ground set")]
    EmptyGroundSet,

    #[error("matroid has loops {0}; this operation requires a loopless matroid")]
    Loops(ElementSet),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no common independent set of size {0}")]
    NoCommonIndependent(usize),

    #[error("invariant violation, {claim}: {detail}")]
    InvariantViolation { claim: &'static str, detail: String },

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
