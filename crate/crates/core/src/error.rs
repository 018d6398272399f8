use thiserror::Error;

/// Errors raised by the algebra engine and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable spaces differ: [{left}] vs [{right}]")]
    SpaceMismatch { left: String, right: String },

    #[error("invalid variable space: {0}")]
    InvalidSpace(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("the ideal contains 1, so its zero set is empty")]
    EmptyVariety,

    #[error("an ideal needs at least one nonzero generator")]
    EmptyIdeal,

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: undeclared variable `{name}`")]
    UndeclaredVariable {
        line: usize,
        column: usize,
        name: String,
    },

    #[error("{line}:{column}: variable `{name}` has no conjugate partner")]
    NoConjugatePartner {
        line: usize,
        column: usize,
        name: String,
    },

    #[error(
        "not real-valued for any unit multiple: coefficient of {monomial} is {coefficient}, \
         but the mirrored term {mirror} has coefficient {mirror_coefficient}"
    )]
    NotRealValued {
        monomial: String,
        coefficient: String,
        mirror: String,
        mirror_coefficient: String,
    },

    #[error("expected a holomorphic polynomial, found conjugated variable `{0}`")]
    NotHolomorphic(String),

    #[error("split does not add up to the complexified polynomial: residual {0}")]
    InconsistentSplit(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a catalog germ: {0}")]
    NotInCatalog(String),

    #[error("expected divisibility by {var}^{expected}, but the pullback is only divisible by {var}^{actual}")]
    Multiplicity {
        var: String,
        expected: u32,
        actual: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
