use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or misuse of an operation.
    Usage,
    /// Well-formed input that violates a mathematical precondition.
    Domain,
    /// A broken internal invariant.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("elementary move e+({i},{j}) is undefined on {monomial}")]
    InvalidMove { i: usize, j: usize, monomial: String },
    #[error("the constant monomial has no minimal or maximal variable")]
    ConstantMonomial,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("{0} does not lie in the ideal")]
    NotInIdeal(String),
    #[error("not strongly stable: e+ move x{i}\u{2192}x{j} of {monomial} leaves the ideal")]
    NotStronglyStable { monomial: String, i: usize, j: usize },
    #[error("the ideal is not an m-truncation of its saturation")]
    NotTruncation,
    #[error("invalid marked set: {0}")]
    InvalidMarkedSet(String),
    #[error("no value assigned to parameter {0}")]
    MissingParameter(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("S-polynomial of two polynomials with the same head {0}")]
    EqualHeads(String),
    #[error("reduction did not terminate within {0} steps")]
    StepBudgetExhausted(u64),
    #[error("not an admissible Hilbert polynomial: {0}")]
    NotAdmissible(String),
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            VarCountMismatch(..)
            | InvalidMove { .. }
            | ConstantMonomial
            | EmptyGenerators
            | MissingParameter(_)
            | NotHomogeneous
            | EqualHeads(_)
            | Parse(_) => ErrorKind::Usage,
            NotInIdeal(_)
            | NotStronglyStable { .. }
            | NotTruncation
            | InvalidMarkedSet(_)
            | NotAdmissible(_)
            | StepBudgetExhausted(_) => ErrorKind::Domain,
            Internal(_) => ErrorKind::Internal,
        }
    }
}
