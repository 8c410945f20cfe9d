use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("not divisible: {dividend} is not a polynomial multiple of {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),

    #[error("index {index} out of range: {reason}")]
    IndexOutOfRange { index: i64, reason: String },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("presentation mismatch")]
    PresentationMismatch,

    #[error("generator images violate the defining relations: {0}")]
    ImagesViolateRelations(String),

    #[error("operator does not preserve the cusp algebra: {0}")]
    NotStable(String),

    #[error("window {window} is too small (need at least {required})")]
    WindowTooSmall { window: i64, required: i64 },

    #[error("element has the wrong shape: {0}")]
    WrongShape(String),

    #[error("polynomial has an irreducible factor of degree >= 2: {0}")]
    NonlinearFactor(String),

    #[error("element is not normal: {0}")]
    NotNormal(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
