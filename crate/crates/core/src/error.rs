use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants are grouped so that a front end can map them onto exit codes:
/// input problems, capability gaps, and internal invariant failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index error: {0}")]
    Index(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid exchange matrix: {0}")]
    InvalidMatrix(String),

    #[error("quiver is not acyclic: cycle {cycle:?}")]
    Acyclicity { cycle: Vec<usize> },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("not exactly divisible: {0}")]
    Divisibility(String),

    #[error("undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("provider domain error: {0}")]
    ProviderDomain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("integrality violation: {0}")]
    Integrality(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed or out-of-range input.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Index(_)
                | Error::Dimension { .. }
                | Error::InvalidMatrix(_)
                | Error::Parse(_)
                | Error::Precondition(_)
                | Error::ZeroPolynomial(_)
                | Error::Acyclicity { .. }
        )
    }

    /// True for errors meaning "this engine cannot answer this question".
    pub fn is_capability(&self) -> bool {
        matches!(
            self,
            Error::Capability(_) | Error::ProviderDomain(_) | Error::Capacity(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Parses JSON, reporting failures with the byte offset of the error.
pub fn parse_json<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| {
        let offset = byte_offset(s, e.line(), e.column());
        Error::Parse(format!("{what}: {e} (byte offset {offset})"))
    })
}

/// Byte offset of a 1-based line and column as reported by `serde_json`.
fn byte_offset(s: &str, line: usize, column: usize) -> usize {
    let before: usize = s.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}
