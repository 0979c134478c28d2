//! Board geometry: squares, the four line families, and attack counting.
//!
//! Coordinates are 1-based with `(1, 1)` in the bottom-left corner. A queen
//! attacks its whole row, column and both diagonals; other queens never block
//! a line. The *covered* set of a placement is the union of every line holding
//! a queen, so it contains the queens themselves. The *attacked* count leaves
//! the queen squares out and is always `covered - k`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Side length of a square board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoardDim(u32);

impl BoardDim {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBoard);
        }
        Ok(BoardDim(n))
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.0
    }

    pub fn contains(self, sq: Square) -> bool {
        (1..=self.0).contains(&sq.x) && (1..=self.0).contains(&sq.y)
    }

    /// Every square, row by row from the bottom.
    pub fn squares(self) -> impl Iterator<Item = Square> {
        let n = self.0;
        (1..=n).flat_map(move |y| (1..=n).map(move |x| Square::new(x, y)))
    }

    /// Number of lines on the board: `n` rows, `n` columns, `2n - 1` diagonals each way.
    pub fn line_count(self) -> usize {
        6 * self.0 as usize - 2
    }

    /// Every line of the board in family order.
    pub fn lines(self) -> impl Iterator<Item = Line> {
        let n = self.0 as i32;
        let rows = (1..=n).map(Line::row);
        let cols = (1..=n).map(Line::col);
        let pos = (1 - n..=n - 1).map(Line::diag_pos);
        let neg = (2..=2 * n).map(Line::diag_neg);
        rows.chain(cols).chain(pos).chain(neg)
    }
}

impl fmt::Display for BoardDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.0, self.0)
    }
}

/// A board square; `x` is the column and `y` the row. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct Square {
    pub x: u32,
    pub y: u32,
}

impl Square {
    pub const fn new(x: u32, y: u32) -> Self {
        Square { x, y }
    }

    /// Distance to the nearest edge of the board, 0 on the rim.
    pub fn edge_distance(self, dim: BoardDim) -> u32 {
        let n = dim.n();
        (self.x - 1).min(self.y - 1).min(n - self.x).min(n - self.y)
    }
}

impl From<[u32; 2]> for Square {
    fn from([x, y]: [u32; 2]) -> Self {
        Square { x, y }
    }
}

impl From<Square> for [u32; 2] {
    fn from(sq: Square) -> Self {
        [sq.x, sq.y]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LineKind {
    Row,
    Col,
    /// Slope +1, constant `x - y`.
    DiagPos,
    /// Slope -1, constant `x + y`.
    DiagNeg,
}

impl LineKind {
    pub const ALL: [LineKind; 4] = [
        LineKind::Row,
        LineKind::Col,
        LineKind::DiagPos,
        LineKind::DiagNeg,
    ];

    pub fn is_diagonal(self) -> bool {
        matches!(self, LineKind::DiagPos | LineKind::DiagNeg)
    }
}

/// One row, column or diagonal of the board.
///
/// The index is `y` for rows, `x` for columns, `x - y` for positive diagonals
/// and `x + y` for negative diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Line {
    pub kind: LineKind,
    pub index: i32,
}

impl Line {
    pub const fn new(kind: LineKind, index: i32) -> Self {
        Line { kind, index }
    }

    pub const fn row(y: i32) -> Self {
        Line::new(LineKind::Row, y)
    }

    pub const fn col(x: i32) -> Self {
        Line::new(LineKind::Col, x)
    }

    pub const fn diag_pos(d: i32) -> Self {
        Line::new(LineKind::DiagPos, d)
    }

    pub const fn diag_neg(s: i32) -> Self {
        Line::new(LineKind::DiagNeg, s)
    }

    /// The line of the given family through `sq`.
    pub fn through(sq: Square, kind: LineKind) -> Self {
        let (x, y) = (sq.x as i32, sq.y as i32);
        let index = match kind {
            LineKind::Row => y,
            LineKind::Col => x,
            LineKind::DiagPos => x - y,
            LineKind::DiagNeg => x + y,
        };
        Line::new(kind, index)
    }

    pub fn is_valid(self, dim: BoardDim) -> bool {
        let n = dim.n() as i32;
        match self.kind {
            LineKind::Row | LineKind::Col => (1..=n).contains(&self.index),
            LineKind::DiagPos => (1 - n..=n - 1).contains(&self.index),
            LineKind::DiagNeg => (2..=2 * n).contains(&self.index),
        }
    }

    pub fn validate(self, dim: BoardDim) -> Result<()> {
        if self.is_valid(dim) {
            Ok(())
        } else {
            Err(Error::LineOutOfRange { line: self, n: dim.n() })
        }
    }

    /// Number of squares on the line.
    pub fn length(self, dim: BoardDim) -> Result<u32> {
        self.validate(dim)?;
        Ok(self.length_unchecked(dim))
    }

    pub(crate) fn length_unchecked(self, dim: BoardDim) -> u32 {
        let n = dim.n() as i32;
        let len = match self.kind {
            LineKind::Row | LineKind::Col => n,
            LineKind::DiagPos => n - self.index.abs(),
            LineKind::DiagNeg => (self.index - 1).min(2 * n + 1 - self.index),
        };
        len as u32
    }

    pub fn contains(self, sq: Square) -> bool {
        Line::through(sq, self.kind) == self
    }

    /// The squares of the line, sorted by `x` (then `y`).
    pub fn squares(self, dim: BoardDim) -> Result<Vec<Square>> {
        self.validate(dim)?;
        let n = dim.n() as i32;
        let i = self.index;
        let out = match self.kind {
            LineKind::Row => (1..=n).map(|x| (x, i)).collect::<Vec<_>>(),
            LineKind::Col => (1..=n).map(|y| (i, y)).collect(),
            LineKind::DiagPos => (1.max(1 + i)..=n.min(n + i)).map(|x| (x, x - i)).collect(),
            LineKind::DiagNeg => (1.max(i - n)..=n.min(i - 1)).map(|x| (x, i - x)).collect(),
        };
        Ok(out
            .into_iter()
            .map(|(x, y)| Square::new(x as u32, y as u32))
            .collect())
    }

    /// The square where two lines cross, if they cross on the board.
    pub fn crossing(self, other: Line, dim: BoardDim) -> Option<Square> {
        if self.kind == other.kind {
            return None;
        }
        // Solve for (x, y) using whichever pair of equations we have.
        let (a, b) = if self.kind < other.kind { (self, other) } else { (other, self) };
        let (x2, y2) = match (a.kind, b.kind) {
            (LineKind::Row, LineKind::Col) => (2 * b.index, 2 * a.index),
            (LineKind::Row, LineKind::DiagPos) => (2 * (b.index + a.index), 2 * a.index),
            (LineKind::Row, LineKind::DiagNeg) => (2 * (b.index - a.index), 2 * a.index),
            (LineKind::Col, LineKind::DiagPos) => (2 * a.index, 2 * (a.index - b.index)),
            (LineKind::Col, LineKind::DiagNeg) => (2 * a.index, 2 * (b.index - a.index)),
            (LineKind::DiagPos, LineKind::DiagNeg) => (a.index + b.index, b.index - a.index),
            _ => unreachable!("line kinds are ordered"),
        };
        if x2 % 2 != 0 || y2 % 2 != 0 || x2 < 2 || y2 < 2 {
            return None;
        }
        let sq = Square::new((x2 / 2) as u32, (y2 / 2) as u32);
        dim.contains(sq).then_some(sq)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            LineKind::Row => "row",
            LineKind::Col => "col",
            LineKind::DiagPos => "diag+",
            LineKind::DiagNeg => "diag-",
        };
        write!(f, "{name} {}", self.index)
    }
}

/// The line of `kind` through `sq`.
pub fn line_through(sq: Square, kind: LineKind) -> Line {
    Line::through(sq, kind)
}

/// Length of `line` on an `n x n` board.
pub fn line_length(line: Line, dim: BoardDim) -> Result<u32> {
    line.length(dim)
}

pub fn squares_on(line: Line, dim: BoardDim) -> Result<Vec<Square>> {
    line.squares(dim)
}

/// Sum of the lengths of the two diagonals through `sq`.
///
/// Always `n + 1 + 2 * edge_distance`.
pub fn diag_length_sum(sq: Square, dim: BoardDim) -> u32 {
    Line::through(sq, LineKind::DiagPos).length_unchecked(dim)
        + Line::through(sq, LineKind::DiagNeg).length_unchecked(dim)
}

/// A set of board cells stored as a bit array, row-major from `(1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    dim: BoardDim,
    words: Vec<u64>,
}

impl CellSet {
    pub fn empty(dim: BoardDim) -> Self {
        let cells = (dim.n() as usize).pow(2);
        CellSet { dim, words: vec![0; cells.div_ceil(64)] }
    }

    pub fn dim(&self) -> BoardDim {
        self.dim
    }

    #[inline]
    fn bit(&self, sq: Square) -> usize {
        (sq.y as usize - 1) * self.dim.n() as usize + (sq.x as usize - 1)
    }

    pub fn insert(&mut self, sq: Square) {
        debug_assert!(self.dim.contains(sq));
        let b = self.bit(sq);
        self.words[b / 64] |= 1 << (b % 64);
    }

    pub fn contains(&self, sq: Square) -> bool {
        if !self.dim.contains(sq) {
            return false;
        }
        let b = self.bit(sq);
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &CellSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &CellSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = Square> + '_ {
        let n = self.dim.n() as usize;
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                Some(Square::new((b % n) as u32 + 1, (b / n) as u32 + 1))
            })
        })
    }
}

/// Precomputed cell masks for every line of one board size.
#[derive(Debug, Clone)]
pub struct LineMasks {
    dim: BoardDim,
    masks: Vec<CellSet>,
}

impl LineMasks {
    pub fn new(dim: BoardDim) -> Self {
        let masks = dim
            .lines()
            .map(|line| {
                let mut set = CellSet::empty(dim);
                for sq in line.squares(dim).expect("board lines are valid") {
                    set.insert(sq);
                }
                set
            })
            .collect();
        LineMasks { dim, masks }
    }

    pub fn dim(&self) -> BoardDim {
        self.dim
    }

    fn slot(&self, line: Line) -> usize {
        let n = self.dim.n() as i32;
        let off = match line.kind {
            LineKind::Row => line.index - 1,
            LineKind::Col => n + line.index - 1,
            LineKind::DiagPos => 2 * n + line.index + n - 1,
            LineKind::DiagNeg => 4 * n - 1 + line.index - 2,
        };
        off as usize
    }

    pub fn mask(&self, line: Line) -> &CellSet {
        debug_assert!(line.is_valid(self.dim));
        &self.masks[self.slot(line)]
    }

    /// Union of the four lines through every square in `queens`.
    pub fn covered<'a>(&self, queens: impl IntoIterator<Item = &'a Square>) -> CellSet {
        let mut out = CellSet::empty(self.dim);
        let mut seen = vec![false; self.masks.len()];
        for &q in queens {
            for kind in LineKind::ALL {
                let slot = self.slot(Line::through(q, kind));
                if !std::mem::replace(&mut seen[slot], true) {
                    out.union_with(&self.masks[slot]);
                }
            }
        }
        out
    }
}

/// A board size together with a set of distinct queen squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlacementJson", into = "PlacementJson")]
pub struct Placement {
    dim: BoardDim,
    queens: BTreeSet<Square>,
}

impl Placement {
    pub fn empty(dim: BoardDim) -> Self {
        Placement { dim, queens: BTreeSet::new() }
    }

    /// Builds a placement, rejecting off-board and repeated squares.
    pub fn new(dim: BoardDim, queens: impl IntoIterator<Item = Square>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for q in queens {
            if !dim.contains(q) {
                return Err(Error::OffBoard { x: q.x as i64, y: q.y as i64, n: dim.n() });
            }
            if !set.insert(q) {
                return Err(Error::DuplicateQueen { x: q.x, y: q.y });
            }
        }
        Ok(Placement { dim, queens: set })
    }

    pub fn from_coords(n: u32, coords: &[(u32, u32)]) -> Result<Self> {
        Placement::new(BoardDim::new(n)?, coords.iter().map(|&(x, y)| Square::new(x, y)))
    }

    pub fn dim(&self) -> BoardDim {
        self.dim
    }

    pub fn n(&self) -> u32 {
        self.dim.n()
    }

    pub fn queens(&self) -> &BTreeSet<Square> {
        &self.queens
    }

    pub fn len(&self) -> usize {
        self.queens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queens.is_empty()
    }

    pub fn contains(&self, sq: Square) -> bool {
        self.queens.contains(&sq)
    }

    pub(crate) fn remove(&mut self, sq: Square) -> bool {
        self.queens.remove(&sq)
    }

    pub fn lines(&self) -> LineSet {
        lines_of(self)
    }

    pub fn covered_squares(&self) -> CellSet {
        covered_squares(self)
    }

    pub fn covered_count(&self) -> usize {
        covered_count(self)
    }

    pub fn attacked_count(&self) -> usize {
        attacked_count(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("placements always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Wire form: `{"n": 8, "queens": [[1, 1], [2, 3]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlacementJson {
    pub n: u32,
    pub queens: Vec<[i64; 2]>,
}

impl TryFrom<PlacementJson> for Placement {
    type Error = Error;

    fn try_from(raw: PlacementJson) -> Result<Self> {
        let dim = BoardDim::new(raw.n)?;
        let mut squares = Vec::with_capacity(raw.queens.len());
        for [x, y] in raw.queens {
            let on_board = (1..=raw.n as i64).contains(&x) && (1..=raw.n as i64).contains(&y);
            if !on_board {
                return Err(Error::OffBoard { x, y, n: raw.n });
            }
            squares.push(Square::new(x as u32, y as u32));
        }
        Placement::new(dim, squares)
    }
}

impl From<Placement> for PlacementJson {
    fn from(p: Placement) -> Self {
        PlacementJson {
            n: p.dim.n(),
            queens: p.queens.iter().map(|q| [q.x as i64, q.y as i64]).collect(),
        }
    }
}

/// The occupied lines of a placement, one set of indices per family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineSet {
    pub rows: BTreeSet<i32>,
    pub cols: BTreeSet<i32>,
    pub pos_diags: BTreeSet<i32>,
    pub neg_diags: BTreeSet<i32>,
}

impl LineSet {
    pub fn family(&self, kind: LineKind) -> &BTreeSet<i32> {
        match kind {
            LineKind::Row => &self.rows,
            LineKind::Col => &self.cols,
            LineKind::DiagPos => &self.pos_diags,
            LineKind::DiagNeg => &self.neg_diags,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Line> + '_ {
        LineKind::ALL
            .into_iter()
            .flat_map(move |k| self.family(k).iter().map(move |&i| Line::new(k, i)))
    }

    pub fn len(&self) -> usize {
        self.rows.len() + self.cols.len() + self.pos_diags.len() + self.neg_diags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum of the lengths of every occupied line.
    pub fn total_length(&self, dim: BoardDim) -> u64 {
        self.iter().map(|l| l.length_unchecked(dim) as u64).sum()
    }
}

pub fn lines_of(p: &Placement) -> LineSet {
    let mut set = LineSet::default();
    for &q in &p.queens {
        set.rows.insert(q.y as i32);
        set.cols.insert(q.x as i32);
        set.pos_diags.insert(Line::through(q, LineKind::DiagPos).index);
        set.neg_diags.insert(Line::through(q, LineKind::DiagNeg).index);
    }
    set
}

/// Union of all lines through the queens, queen squares included.
pub fn covered_squares(p: &Placement) -> CellSet {
    LineMasks::new(p.dim).covered(&p.queens)
}

pub fn covered_count(p: &Placement) -> usize {
    covered_squares(p).len()
}

/// Squares attacked by some queen and not occupied by one.
pub fn attacked_count(p: &Placement) -> usize {
    covered_count(p) - p.len()
}

/// Number of squares covered by both single-queen placements.
pub fn common_attacked(q1: Square, q2: Square, dim: BoardDim) -> Result<usize> {
    for q in [q1, q2] {
        if !dim.contains(q) {
            return Err(Error::OffBoard { x: q.x as i64, y: q.y as i64, n: dim.n() });
        }
    }
    if q1 == q2 {
        return Err(Error::domain("common_attacked needs two distinct squares"));
    }
    let masks = LineMasks::new(dim);
    Ok(masks.covered([&q1]).intersection_len(&masks.covered([&q2])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> BoardDim {
        BoardDim::new(n).unwrap()
    }

    fn sq(x: u32, y: u32) -> Square {
        Square::new(x, y)
    }

    /// Union by brute force over all squares, independent of the masks.
    fn covered_oracle(p: &Placement) -> usize {
        p.dim()
            .squares()
            .filter(|&s| {
                p.queens().iter().any(|q| {
                    q.x == s.x
                        || q.y == s.y
                        || q.x as i32 - q.y as i32 == s.x as i32 - s.y as i32
                        || q.x + q.y == s.x + s.y
                })
            })
            .count()
    }

    #[test]
    fn line_through_examples() {
        assert_eq!(line_through(sq(3, 5), LineKind::DiagPos), Line::diag_pos(-2));
        assert_eq!(line_through(sq(3, 5), LineKind::DiagNeg), Line::diag_neg(8));
        assert_eq!(line_through(sq(1, 1), LineKind::Row), Line::row(1));
    }

    #[test]
    fn line_length_examples() {
        assert_eq!(line_length(Line::diag_pos(0), dim(8)), Ok(8));
        assert_eq!(line_length(Line::diag_neg(2), dim(8)), Ok(1));
        let by_enumeration = dim(11)
            .squares()
            .filter(|s| s.x as i32 - s.y as i32 == -5)
            .count();
        assert_eq!(by_enumeration, 6);
        assert_eq!(line_length(Line::diag_pos(-5), dim(11)), Ok(6));
    }

    #[test]
    fn line_length_rejects_bad_index() {
        for line in [Line::row(0), Line::col(9), Line::diag_pos(8), Line::diag_neg(1), Line::diag_neg(17)] {
            assert!(matches!(line.length(dim(8)), Err(Error::LineOutOfRange { .. })));
        }
    }

    #[test]
    fn squares_on_examples() {
        assert_eq!(squares_on(Line::row(1), dim(3)).unwrap(), vec![sq(1, 1), sq(2, 1), sq(3, 1)]);
        assert_eq!(squares_on(Line::diag_neg(4), dim(3)).unwrap(), vec![sq(1, 3), sq(2, 2), sq(3, 1)]);
        assert_eq!(squares_on(Line::diag_pos(2), dim(4)).unwrap(), vec![sq(3, 1), sq(4, 2)]);
    }

    #[test]
    fn squares_on_matches_length_everywhere() {
        for n in 1..=32 {
            let d = dim(n);
            assert_eq!(d.lines().count(), d.line_count());
            for line in d.lines() {
                let squares = line.squares(d).unwrap();
                assert_eq!(squares.len() as u32, line.length(d).unwrap(), "{line} on n={n}");
                assert!(squares.iter().all(|&s| d.contains(s) && line.contains(s)));
                assert!(squares.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn lines_of_examples() {
        let p = Placement::from_coords(8, &[(1, 1)]).unwrap();
        let ls = lines_of(&p);
        assert_eq!(ls.rows, BTreeSet::from([1]));
        assert_eq!(ls.cols, BTreeSet::from([1]));
        assert_eq!(ls.pos_diags, BTreeSet::from([0]));
        assert_eq!(ls.neg_diags, BTreeSet::from([2]));

        let p = Placement::from_coords(8, &[(1, 1), (2, 2)]).unwrap();
        let ls = lines_of(&p);
        assert_eq!(ls.rows, BTreeSet::from([1, 2]));
        assert_eq!(ls.pos_diags, BTreeSet::from([0]));
        assert_eq!(ls.neg_diags, BTreeSet::from([2, 4]));
    }

    #[test]
    fn covered_examples() {
        let empty = Placement::empty(dim(8));
        assert!(covered_squares(&empty).is_empty());

        let corner = Placement::from_coords(8, &[(1, 1)]).unwrap();
        assert_eq!(covered_oracle(&corner), 22);
        assert_eq!(covered_count(&corner), 22);

        let corner5 = Placement::from_coords(5, &[(1, 1)]).unwrap();
        assert_eq!((covered_count(&corner5), attacked_count(&corner5)), (13, 12));

        let centre = Placement::from_coords(8, &[(4, 4)]).unwrap();
        assert_eq!(attacked_count(&centre), 27);
    }

    #[test]
    fn covered_matches_oracle_on_mixed_placements() {
        let p = Placement::from_coords(7, &[(1, 2), (3, 3), (7, 7), (4, 1), (2, 6)]).unwrap();
        assert_eq!(covered_count(&p), covered_oracle(&p));
        let set = covered_squares(&p);
        assert!(p.queens().iter().all(|&q| set.contains(q)));
        assert_eq!(set.iter().count(), set.len());
        assert!(set.len() as u64 <= lines_of(&p).total_length(p.dim()));
    }

    #[test]
    fn common_attacked_examples() {
        let d = dim(8);
        let shared = common_attacked(sq(1, 1), sq(8, 8), d).unwrap();
        assert!(shared >= 8);

        let d5 = dim(5);
        let a = Placement::from_coords(5, &[(1, 1)]).unwrap();
        let b = Placement::from_coords(5, &[(2, 3)]).unwrap();
        let sa = covered_squares(&a);
        let sb = covered_squares(&b);
        let oracle = d5.squares().filter(|&s| sa.contains(s) && sb.contains(s)).count();
        assert_eq!(common_attacked(sq(1, 1), sq(2, 3), d5).unwrap(), oracle);

        assert!(common_attacked(sq(2, 2), sq(2, 2), d5).is_err());
    }

    #[test]
    fn non_sharing_pairs_overlap_in_at_most_twelve() {
        for n in 1..=12 {
            let d = dim(n);
            let squares: Vec<_> = d.squares().collect();
            let masks = LineMasks::new(d);
            let single: Vec<_> = squares.iter().map(|q| masks.covered([q])).collect();
            for i in 0..squares.len() {
                for j in i + 1..squares.len() {
                    let (a, b) = (squares[i], squares[j]);
                    let shares = LineKind::ALL
                        .iter()
                        .any(|&k| Line::through(a, k) == Line::through(b, k));
                    if !shares {
                        assert!(single[i].intersection_len(&single[j]) <= 12, "{a} {b} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn diag_length_sum_identity() {
        assert_eq!(diag_length_sum(sq(1, 1), dim(8)), 9);
        assert_eq!(diag_length_sum(sq(3, 3), dim(5)), 10);
        for n in 1..=12 {
            let d = dim(n);
            for s in d.squares() {
                let direct = squares_on(Line::through(s, LineKind::DiagPos), d).unwrap().len()
                    + squares_on(Line::through(s, LineKind::DiagNeg), d).unwrap().len();
                assert_eq!(diag_length_sum(s, d) as usize, direct);
                assert_eq!(direct as u32, n + 1 + 2 * s.edge_distance(d));
            }
        }
    }

    #[test]
    fn single_queen_attacks_between_3n_and_4n() {
        for n in 1..=12 {
            for s in dim(n).squares() {
                let a = Placement::new(dim(n), [s]).unwrap().attacked_count() as u32;
                assert!((3 * n - 3..=4 * n - 4).contains(&a), "n={n} {s}: {a}");
            }
        }
    }

    #[test]
    fn crossing_agrees_with_enumeration() {
        let d = dim(7);
        let lines: Vec<_> = d.lines().collect();
        for &a in &lines {
            for &b in &lines {
                let expected = if a.kind == b.kind {
                    None
                } else {
                    a.squares(d).unwrap().into_iter().find(|&s| b.contains(s))
                };
                assert_eq!(a.crossing(b, d), expected, "{a} x {b}");
            }
        }
    }

    #[test]
    fn placement_rejects_bad_input() {
        assert_eq!(BoardDim::new(0), Err(Error::EmptyBoard));
        assert!(matches!(
            Placement::from_coords(3, &[(1, 1), (1, 1)]),
            Err(Error::DuplicateQueen { x: 1, y: 1 })
        ));
        assert!(matches!(Placement::from_coords(3, &[(4, 1)]), Err(Error::OffBoard { .. })));
    }

    #[test]
    fn placement_json_wire_format() {
        let p = Placement::from_json(r#"{"n": 5, "queens": [[3, 2], [1, 1]]}"#).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_json(), r#"{"n":5,"queens":[[1,1],[3,2]]}"#);
        assert!(Placement::from_json(r#"{"n": 5, "queens": [[1, 1], [1, 1]]}"#).is_err());
        assert!(Placement::from_json(r#"{"n": 5, "queens": [[0, 1]]}"#).is_err());
        assert!(Placement::from_json(r#"{"n": 0, "queens": []}"#).is_err());
    }
}
