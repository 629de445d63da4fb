use thiserror::Error;

use crate::group::AxiomFailure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("order {order} exceeds the bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("group axioms fail: {0}")]
    Axioms(AxiomFailure),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("subset is not a subgroup")]
    NotSubgroup,

    #[error("subgroup is not central")]
    NotCentral,

    #[error("class with representative {0} is central")]
    CentralClass(usize),

    #[error("type label is not constant on the class of {0}")]
    LabelMismatch(String),

    #[error("closed-neighbourhood group {0} does not induce a clique")]
    NotJoinOfCliques(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("no exemplar: {0}")]
    NoExemplar(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
