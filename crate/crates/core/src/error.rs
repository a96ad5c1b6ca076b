use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain size mismatch: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("domain size must be at least 1")]
    EmptyDomain,
    #[error("instance {0} outside domain [1..{1}]")]
    InstanceOutOfRange(usize, usize),
    #[error("concept is not a member of the class")]
    NotInClass,
    #[error("duplicate concept at line {line}")]
    DuplicateConcept { line: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("concept class is empty")]
    EmptyClass,
    #[error("class of {size} concepts exceeds the brute-force cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("concepts are identical")]
    IdenticalConcepts,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("teacher does not cover the class: {0}")]
    TeacherMismatch(String),
    #[error("teacher is not normalized: set sizes differ from order {0}")]
    NotNormalized(usize),
    #[error("recovery precondition violated: {0}")]
    Recovery(#[from] RecoveryError),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// Distinct failure modes of tournament reconstruction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecoveryError {
    #[error("class has {got} concepts, expected 2n = {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("teacher has order {0}, expected 1")]
    NotOrderOne(usize),
    #[error("teacher assigns a set of size {size} to concept #{index}")]
    NotSingleton { index: usize, size: usize },
    #[error("teacher is not admissible: concepts #{0} and #{1} clash")]
    NotAdmissible(usize, usize),
    #[error("singleton {{{instance}}} is used by {count} concepts, expected exactly 2")]
    Multiplicity { instance: usize, count: usize },
    #[error("the two concepts taught by {{{0}}} agree on it")]
    PairAgrees(usize),
    #[error("teacher class differs from the given class")]
    ClassMismatch,
    #[error("reconstructed tournament does not induce the given class")]
    NotInduced,
}

pub type Result<T> = std::result::Result<T, Error>;
