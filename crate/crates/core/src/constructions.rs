//! Explicit placements that keep the number of occupied long lines small.
//!
//! All corner constructions work in *local* coordinates `(u, v)` measured from
//! their corner, so `(1, 1)` is the corner square itself and `u - v` indexes
//! the long diagonals running toward the opposite corner.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::board::{BoardDim, Line, LineKind, LineMasks, Placement, Square};
use crate::error::{Error, Result};
use crate::formulas::{corner_optimum, g_of};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::BottomLeft,
        Corner::BottomRight,
        Corner::TopLeft,
        Corner::TopRight,
    ];

    /// Maps corner-relative coordinates onto the board.
    pub fn to_board(self, u: u32, v: u32, dim: BoardDim) -> Square {
        let n = dim.n();
        match self {
            Corner::BottomLeft => Square::new(u, v),
            Corner::BottomRight => Square::new(n + 1 - u, v),
            Corner::TopLeft => Square::new(u, n + 1 - v),
            Corner::TopRight => Square::new(n + 1 - u, n + 1 - v),
        }
    }

    /// Inverse of [`Corner::to_board`].
    pub fn to_local(self, sq: Square, dim: BoardDim) -> (u32, u32) {
        let n = dim.n();
        match self {
            Corner::BottomLeft => (sq.x, sq.y),
            Corner::BottomRight => (n + 1 - sq.x, sq.y),
            Corner::TopLeft => (sq.x, n + 1 - sq.y),
            Corner::TopRight => (n + 1 - sq.x, n + 1 - sq.y),
        }
    }

    /// Family of the diagonals that run from this corner to the opposite one.
    pub fn long_kind(self) -> LineKind {
        match self {
            Corner::BottomLeft | Corner::TopRight => LineKind::DiagPos,
            Corner::BottomRight | Corner::TopLeft => LineKind::DiagNeg,
        }
    }
}

/// Column, row and diagonal counts of a corner hexagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HexSpec {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub corner: Corner,
}

impl HexSpec {
    /// The unique `(a, a, c)` with `2a + c = m` and `|a - c| <= 1`.
    pub fn balanced(m: u32, corner: Corner) -> Result<Self> {
        if m < 3 {
            return Err(Error::domain(format!("a hexagon needs a line budget of at least 3 (got {m})")));
        }
        let (a, c) = match m % 3 {
            0 => (m / 3, m / 3),
            1 => ((m - 1) / 3, (m - 1) / 3 + 1),
            _ => ((m + 1) / 3, (m + 1) / 3 - 1),
        };
        Ok(HexSpec { a, b: a, c, corner })
    }

    pub fn budget(&self) -> u32 {
        self.a + self.b + self.c
    }

    /// Local diagonal indices `u - v` kept by the hexagon.
    pub fn diag_window(&self) -> std::ops::RangeInclusive<i32> {
        let c = self.c as i32;
        -((c - 1) / 2)..=c / 2
    }

    /// The `a + b + c` board lines the hexagon is allowed to occupy.
    pub fn lines(&self, dim: BoardDim) -> Vec<Line> {
        let mut out = Vec::new();
        for u in 1..=self.a {
            out.push(Line::col(self.corner.to_board(u, 1, dim).x as i32));
        }
        for v in 1..=self.b {
            out.push(Line::row(self.corner.to_board(1, v, dim).y as i32));
        }
        let kind = self.corner.long_kind();
        for d in self.diag_window() {
            let sq = if d >= 0 {
                self.corner.to_board(1 + d as u32, 1, dim)
            } else {
                self.corner.to_board(1, 1 + (-d) as u32, dim)
            };
            out.push(Line::through(sq, kind));
        }
        out
    }
}

fn check_fits(what: &str, needed: u32, dim: BoardDim) -> Result<()> {
    if dim.n() < needed {
        return Err(Error::domain(format!(
            "{what} needs a board of side at least {needed} (got {})",
            dim.n()
        )));
    }
    Ok(())
}

/// An `s x s` block of queens in one corner.
pub fn square_block(side: u32, corner: Corner, dim: BoardDim) -> Result<Placement> {
    if side == 0 {
        return Err(Error::domain("square block side must be at least 1"));
    }
    check_fits("square block", side, dim)?;
    let queens = (1..=side).flat_map(|u| (1..=side).map(move |v| corner.to_board(u, v, dim)));
    Placement::new(dim, queens)
}

/// Queens on the first `a` columns and `b` rows from a corner whose long
/// diagonal lies in the centred window of `c` diagonals.
pub fn corner_hexagon(spec: HexSpec, dim: BoardDim) -> Result<Placement> {
    let HexSpec { a, b, c, corner } = spec;
    if a == 0 || b == 0 {
        return Err(Error::domain("hexagon needs at least one row and one column"));
    }
    if c == 0 || c > 2 * a.min(b) - 1 {
        return Err(Error::domain(format!(
            "hexagon diagonal count must be in 1..={} (got {c})",
            2 * a.min(b) - 1
        )));
    }
    check_fits("corner hexagon", a + b, dim)?;
    let window = spec.diag_window();
    let mut queens = Vec::new();
    for u in 1..=a {
        for v in 1..=b {
            if window.contains(&(u as i32 - v as i32)) {
                queens.push(corner.to_board(u, v, dim));
            }
        }
    }
    Placement::new(dim, queens)
}

/// The balanced hexagon for a line budget `m`, anchored bottom-left.
///
/// Holds `floor((m^2 + 3) / 12)` queens. For `m = 4` the window of two
/// diagonals is wider than a single-square block, so only one is used.
pub fn uneven_hexagon(m: u32, dim: BoardDim) -> Result<Placement> {
    let spec = HexSpec::balanced(m, Corner::BottomLeft)?;
    check_fits("uneven hexagon", m, dim)?;
    corner_hexagon(HexSpec { c: spec.c.min(2 * spec.a - 1), ..spec }, dim)
}

/// One hexagon with `a = b = c = m/6` in each corner, for `m = 6 (mod 12)`.
///
/// Opposite corners share their long diagonals and adjacent corners share
/// rows or columns, so the occupied lines total exactly `m`.
pub fn four_corner(m: u32, dim: BoardDim) -> Result<Placement> {
    if m % 12 != 6 {
        return Err(Error::domain(format!("four-corner layout needs m = 6 (mod 12) (got {m})")));
    }
    let h = m / 6;
    check_fits("four-corner layout", 4 * h + 2, dim)?;
    let mut queens = Vec::new();
    for corner in Corner::ALL {
        let hex = corner_hexagon(HexSpec { a: h, b: h, c: h, corner }, dim)?;
        queens.extend(hex.queens().iter().copied());
    }
    Placement::new(dim, queens)
}

/// Corners, side midpoints and centre of an odd board.
pub fn nine_queens(dim: BoardDim) -> Result<Placement> {
    let n = dim.n();
    if n < 5 {
        return Err(Error::domain(format!("nine-queen layout needs n >= 5 (got {n})")));
    }
    if n.is_multiple_of(2) {
        return Err(Error::domain(format!("nine-queen layout is only defined for odd n (got {n})")));
    }
    let mid = n.div_ceil(2);
    let coords = [1, mid, n];
    Placement::new(dim, coords.iter().flat_map(|&x| coords.iter().map(move |&y| Square::new(x, y))))
}

/// The nine-queen layout of the largest odd board that fits, anchored at (1, 1).
fn nine_queens_embedded(dim: BoardDim) -> Result<Placement> {
    let inner = if dim.n() % 2 == 1 { dim } else { BoardDim::new(dim.n() - 1)? };
    let p = nine_queens(inner)?;
    Placement::new(dim, p.queens().iter().copied())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Auto,
    Square,
    Hexagon,
    Uneven,
    FourCorner,
    Nine,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Square => "square",
            Strategy::Hexagon => "hexagon",
            Strategy::Uneven => "uneven",
            Strategy::FourCorner => "four-corner",
            Strategy::Nine => "nine",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Strategy::Auto,
            "square" => Strategy::Square,
            "hexagon" => Strategy::Hexagon,
            "uneven" => Strategy::Uneven,
            "four-corner" => Strategy::FourCorner,
            "nine" => Strategy::Nine,
            other => return Err(Error::domain(format!("unknown strategy `{other}`"))),
        })
    }
}

/// A constructed placement plus the family it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub placement: Placement,
    pub strategy: Strategy,
    /// Line budget of the full construction before surplus queens were removed.
    pub budget: Option<u32>,
}

/// Drops queens from the outside of a bottom-left block inward: largest
/// `max(x, y)` first, then largest `|x - y|`.
fn peel(p: &mut Placement, k: usize) {
    let mut order: Vec<Square> = p.queens().iter().copied().collect();
    order.sort_by_key(|q| {
        let dist = q.x.max(q.y);
        let skew = (q.x as i32 - q.y as i32).unsigned_abs();
        Reverse((dist, skew, q.x, q.y))
    });
    for q in order.into_iter().take(p.len().saturating_sub(k)) {
        p.remove(q);
    }
}

/// Repeatedly drops the queen whose removal uncovers the most squares.
fn greedy_trim(p: &mut Placement, k: usize, masks: &LineMasks) {
    while p.len() > k {
        let queens: Vec<Square> = p.queens().iter().copied().collect();
        let victim = queens
            .iter()
            .rev()
            .min_by_key(|&&q| masks.covered(queens.iter().filter(|&&o| o != q)).len())
            .copied()
            .expect("non-empty placement");
        p.remove(victim);
    }
}

fn build(k: usize, dim: BoardDim, strategy: Strategy, masks: &LineMasks) -> Result<Construction> {
    let n = dim.n();
    let (mut placement, budget, trim_greedily) = match strategy {
        Strategy::Auto => unreachable!("auto is resolved by construct"),
        Strategy::Square => {
            let side = (1..).find(|s| s * s >= k as u32).unwrap();
            (square_block(side, Corner::BottomLeft, dim)?, None, false)
        }
        Strategy::Hexagon => {
            let side = (1..).find(|&t| 3 * t * t - 3 * t + 1 >= k as u32).unwrap();
            let w = 2 * side - 1;
            let spec = HexSpec { a: w, b: w, c: w, corner: Corner::BottomLeft };
            (corner_hexagon(spec, dim)?, Some(3 * w), false)
        }
        Strategy::Uneven => {
            let m = (3..).find(|&m| corner_optimum(m as u64) >= k as u64).unwrap();
            (uneven_hexagon(m, dim)?, Some(m), false)
        }
        Strategy::FourCorner => {
            let m = (0..).map(|j| 12 * j + 6).find(|&m| g_of(m as u64) >= k as u64).unwrap();
            (four_corner(m, dim)?, Some(m), true)
        }
        Strategy::Nine => {
            if k > 9 {
                return Err(Error::domain(format!("nine-queen layout holds at most 9 queens (asked for {k})")));
            }
            if n < 5 {
                return Err(Error::domain("nine-queen layout needs n >= 5"));
            }
            (nine_queens_embedded(dim)?, Some(10), true)
        }
    };
    if trim_greedily {
        greedy_trim(&mut placement, k, masks);
    } else {
        peel(&mut placement, k);
    }
    debug_assert_eq!(placement.len(), k);
    Ok(Construction { placement, strategy, budget })
}

/// Places exactly `k` queens using one family, or the best family for `Auto`.
///
/// `Auto` tries the nine-queen layout (for `k <= 9`), the four-corner layout
/// and the balanced hexagon, and keeps whichever covers the fewest squares.
pub fn construct(k: usize, dim: BoardDim, strategy: Strategy) -> Result<Construction> {
    if k == 0 {
        return Err(Error::domain("need at least one queen"));
    }
    let masks = LineMasks::new(dim);
    if strategy != Strategy::Auto {
        return build(k, dim, strategy, &masks);
    }
    let mut candidates = Vec::new();
    if k <= 9 {
        candidates.push(Strategy::Nine);
    }
    candidates.extend([Strategy::FourCorner, Strategy::Uneven]);
    let mut best: Option<(usize, Construction)> = None;
    let mut last_err = None;
    for s in candidates {
        match build(k, dim, s, &masks) {
            Ok(c) => {
                let covered = masks.covered(c.placement.queens()).len();
                if best.as_ref().is_none_or(|(b, _)| covered < *b) {
                    best = Some((covered, c));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((_, c)) => Ok(c),
        None => Err(last_err.unwrap_or_else(|| Error::domain("no construction fits"))),
    }
}

/// The best known placement of `k` queens on the board.
pub fn construct_best(k: usize, dim: BoardDim) -> Result<Placement> {
    construct(k, dim, Strategy::Auto).map(|c| c.placement)
}
