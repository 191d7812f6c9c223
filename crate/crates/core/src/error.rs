use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{element} is not a unit modulo {n}")]
    NotCoprime { element: usize, n: usize },
    #[error("{m} does not divide {n}")]
    NotDivisor { m: usize, n: usize },
    #[error("cannot split {n} as {m} x {}: factors share a prime", n / m)]
    NotCoprimeSplit { n: usize, m: usize },
    #[error("connection set is not symmetric: {0} present but its negative is missing")]
    SymmetryViolation(usize),
    #[error("connection set entry {0} is zero or out of range")]
    RangeViolation(usize),
    #[error("colour of {0} differs from the colour of its negative")]
    ColourMismatch(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group is not transitive")]
    Intransitive,
    #[error("group does not contain the rotation of degree {0}")]
    RotationMissing(usize),
    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("classification violated: {0}")]
    ClassificationViolation(String),
    #[error("dichotomy violated: {0}")]
    DichotomyViolation(String),
    #[error("solvers disagree on X({n}; {set:?})")]
    CrossCheckMismatch { n: usize, set: Vec<usize> },
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

impl Error {
    /// Short stable name of the variant, used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroModulus => "ZeroModulus",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotDivisor { .. } => "NotDivisor",
            Error::NotCoprimeSplit { .. } => "NotCoprimeSplit",
            Error::SymmetryViolation(_) => "SymmetryViolation",
            Error::RangeViolation(_) => "RangeViolation",
            Error::ColourMismatch(_) => "ColourMismatch",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::Intransitive => "Intransitive",
            Error::RotationMissing(_) => "RotationMissing",
            Error::UnsupportedOrder(_) => "UnsupportedOrder",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::Precondition(_) => "Precondition",
            Error::ClassificationViolation(_) => "ClassificationViolation",
            Error::DichotomyViolation(_) => "DichotomyViolation",
            Error::CrossCheckMismatch { .. } => "CrossCheckMismatch",
            Error::Internal(_) => "Internal",
            Error::Parse { .. } => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
