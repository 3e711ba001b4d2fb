use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A letter outside `0..rank`.
    InvalidWord { letter: usize, rank: usize },
    /// Malformed Coxeter matrix (missing/duplicate pair, order < 2, ...).
    InvalidMatrix(String),
    /// A search or enumeration ran past its configured cap.
    BudgetExceeded { what: &'static str, limit: usize },
    /// `invert_unit` on something that is not a single monomial.
    NotAUnit,
    /// The pair has `m_ij = ∞`, so no braid relation exists.
    NoRule { i: usize, j: usize },
    /// Evaluation point does not cover every variable of the polynomial.
    MissingAssignment(String),
    /// Evaluation point assigns zero to a variable.
    ZeroAssignment(String),
    /// Operands belong to different ambient matrices / fields.
    AmbientMismatch,
    /// An operation that needs an even element got an odd one.
    OddElement,
    /// A rank-3 parabolic that was expected to be finite is infinite.
    InfiniteTriple,
    DimensionMismatch(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidWord { letter, rank } => {
                write!(f, "letter {letter} out of range for rank {rank}")
            }
            Error::InvalidMatrix(msg) => write!(f, "invalid Coxeter matrix: {msg}"),
            Error::BudgetExceeded { what, limit } => {
                write!(f, "budget exceeded: {what} (limit {limit})")
            }
            Error::NotAUnit => f.write_str("not a unit: expected a single monomial"),
            Error::NoRule { i, j } => write!(f, "m_{{{i}{j}}} is infinite, no braid relation"),
            Error::MissingAssignment(v) => write!(f, "no value assigned to {v}"),
            Error::ZeroAssignment(v) => write!(f, "zero value assigned to {v}"),
            Error::AmbientMismatch => f.write_str("operands live over different ambient data"),
            Error::OddElement => f.write_str("expected an even element"),
            Error::InfiniteTriple => f.write_str("triple generates an infinite Coxeter group"),
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
