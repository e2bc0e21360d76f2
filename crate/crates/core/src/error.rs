use thiserror::Error;

use crate::permutation::Group;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands are graded by different parity functions")]
    ParityMismatch,
    #[error("unsupported support profile: {0}")]
    UnsupportedProfile(String),
    #[error("unsupported permutation: {0}")]
    UnsupportedPermutation(String),
    #[error("not a bijection of Z: {0}")]
    NotBijective(String),
    #[error("permutation is not a member of {0}")]
    NotInGroup(Group),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("parity function is not in the required class: {0}")]
    WrongClass(String),
    #[error("unsupported group/class combination: {0}")]
    Unsupported(String),
    #[error("invalid window schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid parity word: {0}")]
    InvalidWord(String),
    #[error("odd reflection at white node {0}")]
    WhiteNode(usize),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("weight is not in the weight set")]
    WeightNotInSet,
    #[error("periodic matrix mismatch: {0}")]
    PeriodicMismatch(String),
    #[error("incompatible parity function: {0}")]
    IncompatibleParity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
