use thiserror::Error;

/// Errors produced by the trellis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. Line and column are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Column `0` (1-based) has no nonzero entry, so its monomial factor is undefined.
    #[error("column {0} is identically zero")]
    ZeroColumn(usize),

    #[error("row {0} is identically zero")]
    ZeroRow(usize),

    /// Row reduction could not reach a leading-coefficient matrix of full rank.
    #[error("rows are linearly dependent: {0}")]
    RankDeficient(String),

    #[error("matrix is {0}")]
    NotCanonical(String),

    /// A tail-biting construction needs at least `required` sections.
    #[error("length {length} is too short, at least {required} sections are required")]
    LengthTooShort { length: usize, required: usize },

    /// An exhaustive enumeration would exceed its budget of `2^budget_bits` items.
    #[error("enumeration of 2^{required_bits} items exceeds the budget of 2^{budget_bits}")]
    BudgetExceeded { required_bits: u32, budget_bits: u32 },

    #[error("unknown state {0}")]
    UnknownState(String),

    #[error("no column carries a monomial factor, nothing to shift")]
    EmptyPlan,

    #[error("shifting does not reduce the state space (overall constraint length {before} -> {after})")]
    NoStateReduction { before: u32, after: u32 },

    /// The state is not reachable as a function of the last `M` error symbols.
    #[error("state {0} is not in the image of the syndrome-former state map")]
    ContradictoryState(String),

    /// The state maps to more than one reduced state.
    #[error("state {0} does not determine a unique reduced state")]
    IndeterminateState(String),

    #[error("invalid shift plan: {0}")]
    InvalidPlan(String),

    #[error("syndrome of the reduced run differs from the original")]
    SyndromeMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
