use thiserror::Error;

/// Every failure the library can report.
///
/// `NonExactDivision`, `SearchExhausted`, `UnexpectedCoperiod` and
/// `AmbiguousAnchor` can only fire if an identity is broken somewhere
/// upstream; they are surfaced rather than hidden so verification sweeps
/// catch them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
    #[error("gcd(n, k, r) != 1 for (n, k, r) = ({n}, {k}, {r})")]
    NotCoprime { n: usize, k: usize, r: usize },
    #[error("no coprime z found for (n, k, r) = ({n}, {k}, {r})")]
    SearchExhausted { n: usize, k: usize, r: usize },
    #[error("multiplier z = {z} is not coprime to n = {n}")]
    ZNotCoprime { z: i64, n: usize },
    #[error("permutation {0} is not a single cycle")]
    NotCyclic(String),
    #[error("permutation {perm} is not decreasing on 1..={k} and increasing after")]
    ShapeViolation { perm: String, k: usize },
    #[error("threshold word has co-period {0}, expected 1 or 2")]
    UnexpectedCoperiod(usize),
    #[error("word {word} is not in the domain for n = {n}, k = {k}")]
    NotInDomain { word: String, n: usize, k: usize },
    #[error("tie-break anchor is ambiguous for word {0}")]
    AmbiguousAnchor(String),
    #[error("gcd(q, n) != 1 for (n, q) = ({n}, {q})")]
    GcdNotOne { n: usize, q: usize },
}

impl Error {
    /// Stable upper-case identifier, used by the CLI and the C ABI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "INVALID_PARAMETER",
            Error::Parse(_) => "PARSE_ERROR",
            Error::NonExactDivision(_) => "NON_EXACT_DIVISION",
            Error::NotCoprime { .. } => "NOT_COPRIME",
            Error::SearchExhausted { .. } => "SEARCH_EXHAUSTED",
            Error::ZNotCoprime { .. } => "Z_NOT_COPRIME",
            Error::NotCyclic(_) => "NOT_CYCLIC",
            Error::ShapeViolation { .. } => "SHAPE_VIOLATION",
            Error::UnexpectedCoperiod(_) => "UNEXPECTED_COPERIOD",
            Error::NotInDomain { .. } => "NOT_IN_DOMAIN",
            Error::AmbiguousAnchor(_) => "AMBIGUOUS_ANCHOR",
            Error::GcdNotOne { .. } => "GCD_NOT_ONE",
        }
    }

    /// True for errors caused by malformed caller input rather than a
    /// value outside a mathematical domain.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
