use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown case {0}")]
    UnknownCase(u8),
    #[error("search space too large: {0} candidates (limit {1})")]
    SearchSpaceTooLarge(u128, u128),
    #[error("polynomial is not homogeneous of degree 2 in the generators")]
    NotHomogeneous,
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("division by zero or non-constant divisor")]
    BadDivision,
    #[error("malformed document: {0}")]
    Document(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
