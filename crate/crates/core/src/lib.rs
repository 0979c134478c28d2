//! Placing queens so that they attack as few squares as possible.
//!
//! A queen attacks every square on its row, column and two diagonals, with no
//! blocking. For `k` queens on an `n x n` board the fewest covered squares
//! grows like `m n` where `m` is the smallest line budget whose best
//! construction holds `k` queens. This crate builds those constructions,
//! evaluates the matching lower-bound machinery, and checks small cases by
//! exhaustive search.
//!
//! ```
//! use queen_cover::{construct_best, BoardDim};
//!
//! let p = construct_best(9, BoardDim::new(11)?)?;
//! assert_eq!(p.len(), 9);
//! assert_eq!(p.covered_count(), 89);
//! # Ok::<(), queen_cover::Error>(())
//! ```

pub mod analysis;
pub mod board;
pub mod constructions;
mod error;
pub mod formulas;
pub mod matching;
pub mod render;
pub mod search;
pub mod verify;

pub use analysis::{lower_bound_certificate, min_diag_cover, selection_of, Certificate, LineSelection};
pub use board::{BoardDim, Line, LineKind, Placement, Square};
pub use constructions::{construct, construct_best, Strategy};
pub use error::{Error, Result};
pub use formulas::{f_closed, g_of, m_star};
pub use search::{exact_min_covered, SearchOptions, SearchResult};

/// The guide's chapters, compiled so their listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/board.md")]
    mod board {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/lower-bounds.md")]
    mod lower_bounds {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
