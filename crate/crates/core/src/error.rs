use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("order d = {0} is excluded (d must avoid 1, 2 and 4)")]
    DExcluded(u64),
    #[error("no element of order {d} exists in F_{p}^2 ({d} does not divide p^2 - 1)")]
    DOrderUnavailable { p: u64, d: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a square in F_p^2")]
    NotASquare(String),
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("{0}")]
    BadRange(String),
    #[error("weight for eigenvalue {0} lies outside F_p^2")]
    WeightOutsideField(String),
    #[error("{0} is not a weight of the module")]
    NotAWeight(String),
    #[error("no root nu of the defining equation lies in F_p^2")]
    NuOutsideField,
    #[error("nu q^(-2i) lies in none of the four closed-form case sets")]
    CaseNotApplicable,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("no feasible quadruple has all coordinates in F_p^2")]
    NoSolutionsInField,
    #[error("needs field extension: {0}")]
    NeedsExtension(String),
    #[error("closure exceeded the node cap of {0}")]
    CapExceeded(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DExcluded(_) => "DExcluded",
            Error::DOrderUnavailable { .. } => "DOrderUnavailable",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotASquare(_) => "NotASquare",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::BadRange(_) => "BadRange",
            Error::WeightOutsideField(_) => "WeightOutsideField",
            Error::NotAWeight(_) => "NotAWeight",
            Error::NuOutsideField => "NuOutsideField",
            Error::CaseNotApplicable => "CaseNotApplicable",
            Error::ZeroVector => "ZeroVector",
            Error::NoSolutionsInField => "NoSolutionsInField",
            Error::NeedsExtension(_) => "NeedsExtension",
            Error::CapExceeded(_) => "CapExceeded",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for the errors that mean "the answer lives in a larger field".
    pub fn needs_extension(&self) -> bool {
        matches!(
            self,
            Error::NeedsExtension(_)
                | Error::NotASquare(_)
                | Error::WeightOutsideField(_)
                | Error::NuOutsideField
                | Error::NoSolutionsInField
        )
    }
}
