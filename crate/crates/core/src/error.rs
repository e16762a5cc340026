use thiserror::Error;

/// Errors raised by algebra construction and the solver operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: unknown labels, duplicates, dimension mismatches.
    #[error("input error: {0}")]
    Input(String),

    /// A bracket or map entry that breaks the declared parity.
    #[error("grading error: {0}")]
    Grading(String),

    /// The algebra fails one of its axioms; `witness` names the failing tuple.
    #[error("validation error: {check} fails at {witness}")]
    Validation { check: String, witness: String },

    /// An operation was called outside its hypotheses.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A constructive check contradicted the statement it implements.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
