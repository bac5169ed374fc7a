use thiserror::Error;

/// Errors raised by the algebra, classification and reporting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("jet order must be at least {min}, got {got}")]
    OrderTooSmall { min: u32, got: u32 },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("jet component has a nonzero constant term")]
    NonzeroConstant,
    #[error("linear part is singular")]
    SingularLinearPart,
    #[error("nondegeneracy precondition failed: {0}")]
    Degenerate(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty or reversed interval")]
    InvalidInterval,
    #[error("polynomial vanishes at interval endpoint {0}")]
    RootAtEndpoint(String),
    #[error("rank of linear part is {0}, expected 1")]
    WrongRank(usize),
    #[error("jet is not in standard position: {0}")]
    NotStandardPosition(String),
    #[error("restricted Hessian has nullity {0}; at most 1 is supported")]
    HessianNullity(usize),
    #[error("signature {signature} is not valid for {tag} with n = {n}")]
    InvalidSignature {
        tag: String,
        n: usize,
        signature: usize,
    },
    #[error("operation requires {expected}, got {got}")]
    WrongClass { expected: String, got: String },
    #[error("no certified regular value found: {0}")]
    RegularValueNotFound(String),
    #[error("too many branches: {0} (limit {1})")]
    TooManyBranches(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown constraint `{0}`")]
    InvalidConstraint(String),
    #[error("degree {0} exceeds the supported maximum {1}")]
    DegreeTooLarge(u32, u32),
    #[error("malformed unfolding: {0}")]
    MalformedUnfolding(String),
    #[error("quadratic form is degenerate")]
    DegenerateForm,
}

pub type Result<T> = std::result::Result<T, Error>;
