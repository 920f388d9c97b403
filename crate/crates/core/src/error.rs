use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the core library.
///
/// Variants fall into three families that front-ends map to distinct exit
/// statuses: invalid input data, unmet operation preconditions, and internal
/// consistency failures (which would indicate a bug, never bad input).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("star-condition violated on simplices {offending:?}")]
    StarCondition { offending: Vec<Vec<usize>> },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("multi-fan is not complete")]
    Incomplete,
    #[error("vector is not generic: degenerate on simplex {simplex:?}")]
    NotGeneric { simplex: Vec<usize> },
    #[error("point lies on supporting hyperplane {0}")]
    OnHyperplane(usize),
    #[error("generic vector search exhausted after {0} attempts")]
    GenericSearchExhausted(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("simplex {0:?} is not in the complex")]
    NotInComplex(Vec<usize>),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input data.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_) | Error::StarCondition { .. } | Error::Invalid(_)
        )
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
