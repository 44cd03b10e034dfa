use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qudit dimension N must be at least 2, got {0}")]
    InvalidDimension(u32),

    #[error("qudit count n must be at least 1, got {0}")]
    InvalidQuditCount(usize),

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("could not identify omega as a root of unity in Q(zeta_{modulus}) for N={n}")]
    RootOfUnity { n: u32, modulus: u32 },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("braid indices must differ, got ({0},{0})")]
    DegenerateBraid(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index map is not strictly order-preserving on the generators of the element")]
    NonMonotoneMap,

    #[error("supplied inverse does not satisfy y * y_inv = 1")]
    NotInverse,

    #[error("constant term of {0} is zero")]
    ZeroConstantTerm(&'static str),

    #[error("element arguments belong to different algebras")]
    AlgebraMismatch,

    #[error("{message} (at offset {offset})")]
    Syntax { offset: usize, message: String },

    #[error("context misuse: {0}")]
    ContextMisuse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u64, found: u64 },

    #[error("representation dimension {dim} exceeds budget {budget}")]
    DimensionBudget { dim: usize, budget: usize },

    #[error("layout error: {0}")]
    Layout(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used by the CLI error channel.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDimension(_) | Error::InvalidQuditCount(_) => "invalid-size",
            Error::DivisionByZero => "division-by-zero",
            Error::RootOfUnity { .. } => "root-of-unity",
            Error::IndexOutOfRange { .. } => "index-range",
            Error::DegenerateBraid(_) => "degenerate-braid",
            Error::Precondition(_) => "precondition",
            Error::NonMonotoneMap => "non-monotone-map",
            Error::NotInverse => "not-inverse",
            Error::ZeroConstantTerm(_) => "zero-constant-term",
            Error::AlgebraMismatch => "algebra-mismatch",
            Error::Syntax { .. } => "syntax",
            Error::ContextMisuse(_) => "context-misuse",
            Error::Unsupported(_) => "unsupported",
            Error::Json(_) => "json",
            Error::Schema(_) => "schema",
            Error::ModulusMismatch { .. } => "modulus-mismatch",
            Error::DimensionBudget { .. } => "dimension-budget",
            Error::Layout(_) => "layout",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
