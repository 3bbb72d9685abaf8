//! Crate-wide error type and the CLI exit-code mapping.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QoError {
    /// Syntax error in an input file, with 1-based position.
    Parse { line: usize, col: usize, msg: String },
    /// Precondition violated (zero input, index out of range, bad dimension...).
    Domain(String),
    /// The root set fails a quasi-ordinarity check; carries the offending pair.
    NotQuasiOrdinary(String),
    /// Declared precision is too low to decide the question.
    Indeterminate(String),
    /// A theorem hypothesis (Kuo-Lu k-regularity) does not hold, so there is
    /// no prediction to produce or check.
    HypothesisViolated(String),
    /// An internal consistency assertion failed; indicates a bug.
    Internal(String),
}

impl QoError {
    pub fn exit_code(&self) -> i32 {
        match self {
            QoError::HypothesisViolated(_) => 2,
            QoError::Indeterminate(_) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for QoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QoError::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            QoError::Domain(m) => write!(f, "domain error: {m}"),
            QoError::NotQuasiOrdinary(m) => write!(f, "input is not quasi-ordinary: {m}"),
            QoError::Indeterminate(m) => write!(f, "indeterminate at current precision: {m}"),
            QoError::HypothesisViolated(m) => write!(f, "hypothesis violated: {m}"),
            QoError::Internal(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl std::error::Error for QoError {}

pub type Result<T> = std::result::Result<T, QoError>;
