use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("defining polynomial is reducible over GF({0})")]
    ReduciblePolynomial(u32),
    #[error("invalid defining polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("element {0} is not primitive")]
    NotPrimitive(u32),
    #[error("field too large: q = {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("erasure pattern is not uniquely solvable")]
    Unsolvable,
    #[error("parity-check matrix does not have full row rank")]
    RankDeficientH,
    #[error("too large to enumerate: {0}")]
    TooLarge(String),
    #[error("expected {expected} distinct coordinates, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("pattern length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("locality r = {r} does not divide k = {k}")]
    IndivisibleLocality { k: usize, r: usize },
    #[error("inconsistent length: {0}")]
    InconsistentLength(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parent code is not MDS")]
    NotMds,
    #[error("parent parity-check matrix is not of the form (A | I)")]
    NotSystematic,
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("no {rho}-regular square matrix of order {order} exists")]
    InfeasibleRho { rho: usize, order: usize },
    #[error("no valid swap assignment found in iteration {iteration}")]
    SwapExhausted { iteration: usize },
    #[error("no seed choice among {tried} gives correctable Step a rows")]
    NoValidSeeds { tried: usize },
    #[error("code is not a compliant distance-optimal LRC: {0}")]
    NonCompliantCode(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
