use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}")]
    Scalar(String),
    #[error("malformed document: {0}")]
    Document(String),
}

/// Reasons a sampled configuration is rejected and resampled.
#[derive(Debug, Error, Clone, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Genericity {
    #[error("marked point in special position: {0}")]
    SpecialPoint(String),
    #[error("restricted system has dimension {0}, expected 4")]
    RestrictedDimension(usize),
    #[error("image of the restricted system is not a hyperplane (rank {0})")]
    NotHyperplane(usize),
    #[error("hyperplane section conic has rank {0}")]
    DegenerateConic(usize),
    #[error("no rational point on the conic within the height bound")]
    NoConicPoint,
    #[error("sampled curve failed verification: {0}")]
    Verification(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero form not allowed here")]
    ZeroForm,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("invalid line parametrization: {0}")]
    InvalidLine(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("incompatible space: {0}")]
    IncompatibleSpace(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("basis class {0} is not valid on this space")]
    InvalidBasisClass(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("class is only partially known on {0}, which the curve meets")]
    TailViolation(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Genericity(#[from] Genericity),
    #[error("retry cap of {cap} exceeded; failures: {failures:?}")]
    RetriesExhausted { cap: usize, failures: Vec<Genericity> },
}

pub type Result<T> = std::result::Result<T, Error>;
