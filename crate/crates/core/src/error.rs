use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into three families that the CLI maps onto distinct exit
/// codes: input problems ([`Error::is_input`]), violated preconditions of an
/// otherwise well-formed request ([`Error::is_precondition`]), and internal
/// cross-check failures ([`Error::Internal`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("rank-deficient lattice: rows do not span a full-rank lattice")]
    RankDeficient,

    #[error("singular matrix")]
    Singular,

    #[error("groups differ: {0}")]
    GroupMismatch(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element {0} does not belong to the group")]
    NotAnElement(String),

    #[error("{0} is not contained in {1}")]
    NotContained(String, String),

    #[error("quotient G/K is not cyclic (invariants {0:?})")]
    NonCyclicQuotient(Vec<u64>),

    #[error("Roan's theorem requires a cyclic group (invariants {0:?})")]
    NonCyclicGroup(Vec<u64>),

    #[error("generator {generator}: M^{order} ≠ I")]
    RelationViolated { generator: usize, order: u64 },

    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u64, max: u64 },

    #[error("characteristic polynomial is not a product of cyclotomic factors Φ_e with e | {0}")]
    NotCyclotomic(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal cross-check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Malformed or invalid input data (files, matrices, parameters).
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Shape(_)
                | Error::RelationViolated { .. }
                | Error::NonCommuting(..)
                | Error::InvalidGroup(_)
                | Error::InvalidParameter(_)
                | Error::NotAnElement(_)
        )
    }

    /// Well-formed input on which the requested operation is undefined.
    pub fn is_precondition(&self) -> bool {
        !self.is_input() && !matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
