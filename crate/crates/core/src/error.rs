use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{a} is not a unit modulo {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not modular: {0}")]
    NotModular(String),
    #[error("S-matrix is singular")]
    SingularS,
    #[error("degenerate quadratic form: {0}")]
    Degenerate(String),
    #[error("Gauss sum vanishes")]
    TauZero,
    #[error("no matching column: {0}")]
    NoMatch(String),
    #[error("search failed: {0}")]
    NotFound(String),
    #[error("lift failure: {0}")]
    LiftFailure(String),
    #[error("not a signed permutation: {0}")]
    NotSignedPermutation(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("t-spectrum is not multiplicity free")]
    MultiplicityError,
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("factorization failure: {0}")]
    FactorizationFailure(String),
    #[error("no fermion found")]
    NoFermion,
    #[error("more than one fermion candidate: {0:?}")]
    MultipleFermions(Vec<usize>),
    #[error("epsilon mismatch: {0} vs {1}")]
    EpsilonMismatch(i8, i8),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
