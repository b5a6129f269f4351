use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("non-integer coefficient `{0}`")]
    NonIntegerCoefficient(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero constant term: 0 is a root and has no inverse")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial vanishes at {0}")]
    VanishingEvaluation(i64),
    #[error("r = 0: no real conjugates, hypothesis of the bound fails")]
    NoRealConjugates,
    #[error("root iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("root residual {residual:e} exceeds tolerance")]
    ResidualTooLarge { residual: f64 },
    #[error("real classification found {found} real roots, Sturm count is {expected}")]
    ClassificationMismatch { expected: usize, found: usize },
    #[error("non-real roots do not pair up under complex conjugation")]
    ConjugatePairing,
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("exponent pair ({u}, {v}) is outside u >= 0, v >= 0, u + 2v <= 1")]
    RegionViolation { u: f64, v: f64 },
    #[error("invalid scan configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed table: {0}")]
    Table(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
