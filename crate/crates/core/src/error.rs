use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Seifert matrix has odd dimension {0}")]
    OddDimension(usize),
    #[error("det(V - V^T) = {0}, expected 1")]
    SkewNotUnimodular(BigInt),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero in algebraic expression")]
    DivisionByZero,
    #[error("singular evaluation point exp(2*pi*i*{index}/{order}): Alexander polynomial vanishes")]
    SingularPoint { order: u64, index: u64 },
    #[error("Alexander polynomial is not squarefree; supply generators and verify them with the pairing instead")]
    NotSquarefree,
    #[error("knot has trivial Alexander polynomial")]
    TrivialAlexander,
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("prime search exhausted below {cap}")]
    PrimeSearchExhausted { cap: u64 },
    #[error("numerical refinement did not decide within {0} rounds")]
    Undecided(u32),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
