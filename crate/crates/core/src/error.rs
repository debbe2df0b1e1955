use std::time::Duration;

use crate::magma::format::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("order {0} is outside 1..=1024")]
    InvalidOrder(usize),
    #[error("expected {expected} table entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry {value} at ({row}, {col}) is outside the domain of order {order}")]
    DomainViolation {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("order {order} exceeds the limit {limit} of this routine")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("unknown table format {0:?}")]
    UnknownFormat(String),
    #[error("unknown solver backend {0:?}")]
    UnknownSolver(String),
    #[error("unknown generator kind {0:?}")]
    UnknownGenerator(String),
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("time limit of {limit:?} exceeded after committing {} cells", committed.len())]
    Timeout {
        limit: Duration,
        /// Row-major committed prefix of the lexmin table, 0-based.
        committed: Vec<usize>,
    },
    #[error("no value admits an isomorphic copy at cell ({row}, {col}); propagation is unsound")]
    NoFeasibleValue { row: usize, col: usize },
    #[error("generator gave up after {attempts} attempts: {reason}")]
    GeneratorExhausted { attempts: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
