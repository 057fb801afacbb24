use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {word:?} is not reduced")]
    NotReduced { word: Vec<usize> },
    #[error("word {word:?} is not a reduced word for the longest element")]
    NotLongestWord { word: Vec<usize> },
    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("empty Richardson condition: v is not below w in the Bruhat order")]
    EmptyRichardson,
    #[error("position overflow: lowering operator needs position {position} beyond {len}")]
    PositionOverflow { position: usize, len: usize },
    #[error("did not reach highest weight while computing string parameters")]
    NotHighestWeight,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("polytope is unbounded or infeasible")]
    Unbounded,
    #[error("point set is not contained in the polytope's lattice points: {0:?}")]
    NotLatticeSubset(Vec<i64>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("exchange matrix is not of full rank (assumption of full rank is required)")]
    NotFullRank,
    #[error("principal part of the exchange matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("direction {0} is not mutable")]
    FrozenDirection(usize),
    #[error("zero rational function has no valuation")]
    ZeroFunction,
    #[error("expression is not a Laurent polynomial")]
    NotLaurent,
    #[error("operation requires type A, got {0}")]
    NotTypeA(String),
    #[error("all {0} samples were non-generic")]
    AllSamplesSkipped(usize),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
