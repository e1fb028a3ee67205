use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient variable lists differ")]
    AmbientMismatch,
    #[error("variable `{0}` is already part of the ring")]
    NameCollision(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("divisor must be a non-constant polynomial of degree 1")]
    BadDivisor,
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("denominator {index} has degree {degree}, expected a linear form")]
    DenominatorDegree { index: usize, degree: String },
    #[error("invalid problem file: {0}")]
    Problem(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource guard tripped: {0}")]
    ResourceGuard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
