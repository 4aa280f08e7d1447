//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong outside of expression parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `q = 0` degenerates the pair `u`/`w` (the backward recurrence divides
    /// by `q`), so such parameters are rejected uniformly.
    #[error("degenerate parameters: q must be nonzero")]
    DegenerateParams,

    /// A generalised binomial coefficient ran into a vanishing `u` term.
    #[error("zero divisor: u_{0} = 0, generalised binomial undefined")]
    ZeroDivisor(i64),

    /// A computation that must stay rational produced an irrational part.
    /// This indicates a bug, never bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A stated precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Seed count does not match the recurrence order.
    #[error("seed count {got} does not match recurrence order {expected}")]
    SeedCount { expected: usize, got: usize },

    /// Seed vectors disagree about the dimension.
    #[error("seed vectors have mismatched dimensions")]
    DimensionMismatch,

    /// A generated strip term failed to be an integer vector.
    #[error("non-integer entry generated at position {0}")]
    NonIntegerTerm(usize),

    /// Fitting window shorter than the template fitter accepts.
    #[error("window too short: need at least {need} values, got {got}")]
    WindowTooShort { need: usize, got: usize },

    /// Expression text failed to parse.
    #[error("{0}")]
    Parse(#[from] ParseError),

    /// The request is outside the supported fragment.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A corpus file line could not be read.
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },

    /// File I/O, reported with the path for context.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// Parse failure with position and the token set that would have been legal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}:{}: expected ", self.line, self.col)?;
        match self.expected.len() {
            0 => write!(f, "nothing")?,
            1 => write!(f, "{}", self.expected[0])?,
            _ => write!(f, "one of {}", self.expected.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}
