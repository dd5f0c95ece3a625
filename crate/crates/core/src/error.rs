use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// [`Error::kind`] returns the short machine-readable tag used in reports and
/// CLI output ("domain", "budget", "hypothesis", ...).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted: requested width is below the representable precision")]
    PrecisionExhausted,
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("degenerate basis: columns are linearly dependent")]
    DegenerateBasis,
    #[error("dimension {0} outside the supported range")]
    Dimension(usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("body is unbounded")]
    Unbounded,
    #[error("polygon is not convex: {0}")]
    NonConvex(String),
    #[error("polygon is degenerate: {0}")]
    Degenerate(String),
    #[error("hypothesis not certified: {0}")]
    Hypothesis(String),
    #[error("no witness found: {0}")]
    NotFound(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("witness lattice is not admissible: {0}")]
    Inadmissible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cancelled")]
    Cancelled,
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::PrecisionExhausted => "precision-exhausted",
            Error::Precision(_) => "precision",
            Error::DegenerateBasis => "degenerate-basis",
            Error::Dimension(_) => "dimension",
            Error::Budget(_) => "budget",
            Error::Unbounded => "unbounded",
            Error::NonConvex(_) => "non-convex",
            Error::Degenerate(_) => "degenerate",
            Error::Hypothesis(_) => "hypothesis",
            Error::NotFound(_) => "not-found",
            Error::Unsupported(_) => "unsupported",
            Error::Inadmissible(_) => "inadmissible",
            Error::Parse(_) => "parse",
            Error::Cancelled => "cancelled",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
