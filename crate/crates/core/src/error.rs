use thiserror::Error;

use crate::exactla::LinAlgError;
use crate::groups::{GroupError, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("{what} needs about {required} units, over the budget of {limit}")]
    BudgetExceeded { what: String, required: u64, limit: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("classes live on different groups")]
    GroupMismatch,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("element {element} does not centralize the subgroup")]
    NotCentralizing { element: usize },
    #[error("residues are not defined in degree 0")]
    DegreeZero,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
