use thiserror::Error;

use crate::submodular::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Subtraction whose minuend is smaller than its subtrahend.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("scope error: {0}")]
    Scope(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("rounding to denominator {denominator} broke submodularity at {witness}")]
    ApproximationBrokeSubmodularity { denominator: u64, witness: Witness },

    #[error("too large: {0}")]
    TooLarge(String),

    /// `constraint` is the index of the offending constraint in its instance,
    /// when the table came from one.
    #[error("not submodular: constraint {constraint:?} witness {witness}")]
    NotSubmodular {
        constraint: Option<usize>,
        witness: Witness,
    },

    #[error("constraint {0} is not a generalized interval constraint")]
    WrongConstraintKind(usize),

    #[error("function is submodular; no gadget exists")]
    IsSubmodular,

    #[error("gadget projection differs from chi at ({x}, {y})")]
    GadgetMismatch { x: usize, y: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
