use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible series")]
    NonInvertibleSeries,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("duplicate interpolation node q^{0}")]
    DuplicateNode(u32),

    #[error("interpolation of degree {degree} needs at least {needed} points, got {got}")]
    TooFewPoints { degree: usize, needed: usize, got: usize },

    #[error("interpolation node is not a power of q: {0}")]
    NodeNotQPower(String),

    #[error("out of supported range: {0}")]
    OutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Signals a bug rather than bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no Gaussian fit for a={a}: first counterexample at n={n}")]
    NoGaussianFit { a: u32, n: u32 },

    #[error("ansatz failed for a={a}: {reason}")]
    AnsatzFailed { a: u32, reason: String },

    #[error("denominator pattern broken at a={0}")]
    DenominatorPattern(u32),

    #[error("certificate not found at degree cap {0}")]
    CertificateNotFound(u32),

    #[error("malformed b-file at line {line}: {text:?}")]
    MalformedBFile { line: usize, text: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
