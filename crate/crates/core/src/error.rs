use thiserror::Error;

use crate::board::Line;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("board size must be at least 1")]
    EmptyBoard,
    #[error("square ({x}, {y}) is off the {n}x{n} board")]
    OffBoard { x: i64, y: i64, n: u32 },
    #[error("square ({x}, {y}) is listed twice")]
    DuplicateQueen { x: u32, y: u32 },
    #[error("{line} does not exist on a {n}x{n} board")]
    LineOutOfRange { line: Line, n: u32 },
    /// A precondition on sizes or parameters does not hold.
    #[error("{0}")]
    Domain(String),
    #[error("search budget of {budget} nodes exceeded ({explored} explored)")]
    BudgetExceeded { budget: u64, explored: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
