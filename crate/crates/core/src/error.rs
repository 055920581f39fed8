use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different coefficient rings.
    RingMismatch,
    /// Inversion of a ring element that is not a unit.
    NotAUnit,
    /// A parameter polynomial was evaluated without a value for this variable.
    MissingVariable(String),
    /// A product or power left no exact rows.
    TruncationExhausted,
    /// The matrix is not in the group of invertible index-zero matrices.
    NotInGroup { row: usize },
    /// Row, column or sequence position outside the exact region.
    OutOfRange { index: usize, limit: usize },
    /// Polynomial degree exceeds what the truncation can represent.
    DegreeTooLarge { degree: usize, limit: usize },
    /// `Σ aₖ Bᵏ` with `ind(B) ≤ 0` and infinitely many terms.
    Divergent,
    /// `decompose` was handed a matrix with negative index, or
    /// `neg_decompose` one with non-negative index.
    WrongIndex { expected: &'static str, found: i64 },
    /// Two diagonal entries of `H` coincide, so `AB = HA` has no unique monic solution.
    DegenerateSpectrum { first: usize, second: usize },
    /// An input violates a documented precondition.
    Precondition(&'static str),
    UnknownBasis(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => f.write_str("operands belong to different coefficient rings"),
            Error::NotAUnit => f.write_str("element is not a unit"),
            Error::MissingVariable(v) => write!(f, "no value assigned to parameter `{v}`"),
            Error::TruncationExhausted => f.write_str("truncation exhausted: no exact rows remain"),
            Error::NotInGroup { row } => {
                write!(f, "matrix is not invertible: diagonal entry {row} is not a unit")
            }
            Error::OutOfRange { index, limit } => {
                write!(f, "position {index} outside the exact range 0..{limit}")
            }
            Error::DegreeTooLarge { degree, limit } => {
                write!(f, "degree {degree} too large for truncation (limit {limit})")
            }
            Error::Divergent => {
                f.write_str("power series of a matrix with non-positive index does not converge")
            }
            Error::WrongIndex { expected, found } => {
                write!(f, "expected a matrix of {expected} index, found index {found}")
            }
            Error::DegenerateSpectrum { first, second } => write!(
                f,
                "degenerate spectrum: H[{first}][{first}] = H[{second}][{second}]"
            ),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::UnknownBasis(name) => write!(f, "unknown basis matrix `{name}`"),
        }
    }
}

impl core::error::Error for Error {}
