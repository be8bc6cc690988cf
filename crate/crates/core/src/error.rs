use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// [`Error::kind`] groups the variants into the classes that the command-line
/// tool maps onto exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("the zero vector has no primitive generator")]
    ZeroVector,
    #[error("sublattice spans the whole space; the quotient is trivial")]
    FullSpan,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("not a fan: {0}")]
    NotAFan(String),
    #[error("cone is not a face: {0}")]
    NotAFace(String),
    #[error("fan is not unimodular")]
    NotUnimodular,
    #[error("fan is not complete")]
    NotComplete,
    #[error("polytope is not full-dimensional")]
    DegeneratePolytope,
    #[error("minimizing vertex is not unique on the given cone")]
    NonUniqueMinimizer,
    #[error("polynomial is not divisible by the linear form {0}")]
    NotDivisible(String),
    #[error("rational function is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("generating function is identically zero")]
    ZeroFunction,
    #[error("series order budget {0} exceeded")]
    OrderBudgetExceeded(usize),
    #[error("piecewise polynomial is not integral")]
    NonIntegral,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("incompatible filtrations: {0}")]
    IncompatibleFiltrations(String),
    #[error("bundle rank {0} too large for filtration solving (max 4)")]
    RankTooLarge(usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Incompatible,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotDivisible(_) | Error::IncompatibleFiltrations(_) | Error::RankTooLarge(_) => {
                ErrorKind::Incompatible
            }
            Error::NotPolynomial(_) | Error::Internal(_) | Error::OrderBudgetExceeded(_) => ErrorKind::Internal,
            _ => ErrorKind::Validation,
        }
    }

    /// Process exit code: 2 validation, 3 mathematical incompatibility, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Validation => 2,
            ErrorKind::Incompatible => 3,
            ErrorKind::Internal => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
