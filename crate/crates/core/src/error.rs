use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller combined values that do not fit together (mismatched caps,
    /// incomparable manifold classes, malformed requests).
    #[error("usage error: {0}")]
    Usage(String),

    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input descriptor violates one of its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// Dimensions 2, 4 and 8 admit Hopf invariant one classes and are not covered.
    #[error("excluded case n ∈ {{2,4,8}} (got n = {n})")]
    ExcludedCase { n: u32 },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("unsupported expression: {subterm}")]
    Unsupported { subterm: String },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An internal consistency check of a spectral-sequence replay failed.
    #[error("oracle failure: {0}")]
    Oracle(String),
}

impl Error {
    /// Stable machine-readable name used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Validation(_) => "validation",
            Error::ExcludedCase { .. } => "excluded_case",
            Error::HypothesisNotMet(_) => "hypothesis_not_met",
            Error::OutOfScope(_) => "out_of_scope",
            Error::Unsupported { .. } => "unsupported_expression",
            Error::Parse { .. } => "parse",
            Error::Oracle(_) => "oracle",
        }
    }
}
