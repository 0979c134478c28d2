//! Lower-bound machinery.
//!
//! A [`LineSelection`] fixes some columns, rows and diagonals. Its column and
//! row coordinates form a grid, and the grid is peeled into nested rectangular
//! [`Ring`]s. A diagonal meets each ring at most twice, which caps the number of
//! grid points that `c` diagonals can reach by the ring bound
//! [`f_bound`]` + `[`delta`].
//!
//! For an actual placement the diagonal side is handled through matchings:
//! queens that pairwise share no diagonal are a matching between positive and
//! negative diagonals, and by König's theorem the largest such set is as big as
//! the smallest set of diagonals covering every queen. Both are computed
//! exactly, and [`lower_bound_certificate`] turns them into a list of occupied
//! lines whose lengths add up to at least `n * (A + B + C)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::board::{lines_of, BoardDim, Line, LineKind, Placement, Square};
use crate::error::{Error, Result};
use crate::formulas::{delta, f_bound, f_closed, g_of};
use crate::matching::{hopcroft_karp, konig_cover, BipartiteGraph};

/// Chosen columns, rows and diagonals on an `n x n` board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineSelection {
    #[serde(skip)]
    dim: BoardDim,
    cols: Vec<u32>,
    rows: Vec<u32>,
    diags: BTreeSet<Line>,
}

impl LineSelection {
    pub fn new(
        dim: BoardDim,
        cols: Vec<u32>,
        rows: Vec<u32>,
        diags: impl IntoIterator<Item = Line>,
    ) -> Result<Self> {
        for (name, coords) in [("columns", &cols), ("rows", &rows)] {
            if coords.is_empty() {
                return Err(Error::domain(format!("selection needs at least one of the {name}")));
            }
            if !coords.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::domain(format!("selected {name} must be strictly increasing")));
            }
            if coords[0] < 1 || *coords.last().unwrap() > dim.n() {
                return Err(Error::domain(format!("selected {name} must lie on the {dim} board")));
            }
        }
        let diags: BTreeSet<Line> = diags.into_iter().collect();
        for d in &diags {
            if !d.kind.is_diagonal() {
                return Err(Error::domain(format!("{d} is not a diagonal")));
            }
            d.validate(dim)?;
        }
        Ok(LineSelection { dim, cols, rows, diags })
    }

    pub fn dim(&self) -> BoardDim {
        self.dim
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn diags(&self) -> &BTreeSet<Line> {
        &self.diags
    }

    pub fn a(&self) -> usize {
        self.cols.len()
    }

    pub fn b(&self) -> usize {
        self.rows.len()
    }

    pub fn c(&self) -> usize {
        self.diags.len()
    }

    pub fn budget(&self) -> usize {
        self.a() + self.b() + self.c()
    }

    /// Grid point `(x_i, y_j)` with 1-based `i`, `j`.
    pub fn point(&self, i: usize, j: usize) -> Square {
        Square::new(self.cols[i - 1], self.rows[j - 1])
    }

    pub fn grid(&self) -> impl Iterator<Item = Square> + '_ {
        self.cols
            .iter()
            .flat_map(move |&x| self.rows.iter().map(move |&y| Square::new(x, y)))
    }

    fn on_selected_diag(&self, sq: Square) -> bool {
        self.diags.iter().any(|d| d.contains(sq))
    }
}

/// Grid points that also lie on a selected diagonal.
pub fn triple_intersections(sel: &LineSelection) -> BTreeSet<Square> {
    sel.grid().filter(|&p| sel.on_selected_diag(p)).collect()
}

/// The grid points at depth `level` from the outside of the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ring {
    pub level: usize,
    pub points: Vec<Square>,
}

fn ring_level(i: usize, j: usize, a: usize, b: usize) -> usize {
    i.min(j).min(a + 1 - i).min(b + 1 - j)
}

/// Partition of the grid into rings; point `(x_i, y_j)` lands in ring
/// `min(i, j, A + 1 - i, B + 1 - j)`.
pub fn rings_of(sel: &LineSelection) -> Vec<Ring> {
    let (a, b) = (sel.a(), sel.b());
    let depth = a.min(b).div_ceil(2);
    let mut rings: Vec<Ring> = (1..=depth).map(|level| Ring { level, points: Vec::new() }).collect();
    for i in 1..=a {
        for j in 1..=b {
            rings[ring_level(i, j, a, b) - 1].points.push(sel.point(i, j));
        }
    }
    rings
}

/// Points of `ring` on `diag`.
pub fn ring_diag_hits(ring: &Ring, diag: Line) -> usize {
    ring.points.iter().filter(|&&p| diag.contains(p)).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingBoundReport {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Number of triple intersections.
    pub points: usize,
    /// `f_bound(A + B, C) + delta(A + B)`.
    pub ring_bound: u64,
    /// `F_closed(A + B + C)`.
    pub f_closed: u64,
}

impl RingBoundReport {
    pub fn holds(&self) -> bool {
        self.points as u64 <= self.ring_bound && self.points as u64 <= self.f_closed
    }
}

/// Compares the triple intersections of a selection with both ring bounds.
pub fn ring_bound_check(sel: &LineSelection) -> RingBoundReport {
    let (a, b, c) = (sel.a(), sel.b(), sel.c());
    let rc = (a + b) as u64;
    let ring_bound = if c == 0 { 0 } else { f_bound(rc, c as u64) + delta(rc) };
    RingBoundReport {
        a,
        b,
        c,
        points: triple_intersections(sel).len(),
        ring_bound,
        f_closed: f_closed((a + b + c) as u64).expect("a, b >= 1"),
    }
}

/// Queens as edges between their positive and negative diagonals.
struct DiagonalGraph {
    graph: BipartiteGraph,
    pos: Vec<i32>,
    neg: Vec<i32>,
    edge_queen: BTreeMap<(usize, usize), Square>,
}

impl DiagonalGraph {
    fn new(p: &Placement) -> Self {
        let ls = lines_of(p);
        let pos: Vec<i32> = ls.pos_diags.into_iter().collect();
        let neg: Vec<i32> = ls.neg_diags.into_iter().collect();
        let mut graph = BipartiteGraph::new(pos.len(), neg.len());
        let mut edge_queen = BTreeMap::new();
        for &q in p.queens() {
            let l = pos.binary_search(&Line::through(q, LineKind::DiagPos).index).unwrap();
            let r = neg.binary_search(&Line::through(q, LineKind::DiagNeg).index).unwrap();
            graph.add_edge(l, r);
            edge_queen.insert((l, r), q);
        }
        DiagonalGraph { graph, pos, neg, edge_queen }
    }
}

/// Largest set of queens no two of which share a diagonal.
pub fn max_nonsharing_queens(p: &Placement) -> (usize, Vec<Square>) {
    let dg = DiagonalGraph::new(p);
    let m = hopcroft_karp(&dg.graph);
    let witness: Vec<Square> = m.edges().map(|e| dg.edge_queen[&e]).collect::<BTreeSet<_>>().into_iter().collect();
    (witness.len(), witness)
}

/// Fewest diagonals (either orientation) that together hold every queen.
pub fn min_diag_cover(p: &Placement) -> (usize, Vec<Line>) {
    let dg = DiagonalGraph::new(p);
    let m = hopcroft_karp(&dg.graph);
    let (cover_l, cover_r) = konig_cover(&dg.graph, &m);
    let mut lines: Vec<Line> = cover_l
        .into_iter()
        .map(|l| Line::diag_pos(dg.pos[l]))
        .chain(cover_r.into_iter().map(|r| Line::diag_neg(dg.neg[r])))
        .collect();
    lines.sort();
    (lines.len(), lines)
}

/// Occupied lines whose total length witnesses a lower bound on coverage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub lines: Vec<Line>,
    pub total_length: u64,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `A + B + C`.
    pub budget: usize,
    pub n: u32,
    pub f_closed: u64,
    pub g: u64,
}

impl Certificate {
    /// `total_length >= n * M`.
    pub fn is_sound(&self) -> bool {
        self.total_length >= self.n as u64 * self.budget as u64
    }
}

/// All occupied rows and columns plus both diagonals through each queen of a
/// maximum diagonal-disjoint set.
///
/// Each witness queen contributes at least `n + 1` through its two diagonals,
/// and the witness set has `C` queens, so the total reaches `n * (A + B + C)`.
pub fn lower_bound_certificate(p: &Placement) -> Result<Certificate> {
    if p.is_empty() {
        return Err(Error::domain("a certificate needs at least one queen"));
    }
    let dim = p.dim();
    let ls = lines_of(p);
    let (c, witness) = max_nonsharing_queens(p);
    let mut lines: Vec<Line> = ls.cols.iter().map(|&x| Line::col(x)).collect();
    lines.extend(ls.rows.iter().map(|&y| Line::row(y)));
    for &q in &witness {
        lines.push(Line::through(q, LineKind::DiagPos));
        lines.push(Line::through(q, LineKind::DiagNeg));
    }
    let total_length = lines.iter().map(|l| l.length_unchecked(dim) as u64).sum();
    let budget = ls.cols.len() + ls.rows.len() + c;
    Ok(Certificate {
        lines,
        total_length,
        a: ls.cols.len(),
        b: ls.rows.len(),
        c,
        budget,
        n: dim.n(),
        f_closed: f_closed(budget as u64)?,
        g: g_of(budget as u64),
    })
}

/// The selection formed by a placement's occupied columns and rows and a
/// minimum diagonal cover.
pub fn selection_of(p: &Placement) -> Result<LineSelection> {
    let ls = lines_of(p);
    let (_, cover) = min_diag_cover(p);
    LineSelection::new(
        p.dim(),
        ls.cols.iter().map(|&x| x as u32).collect(),
        ls.rows.iter().map(|&y| y as u32).collect(),
        cover,
    )
}

/// Measurements of the ring where the ring bound becomes tight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalRingReport {
    pub level: usize,
    /// `x_l - x_1`, `y_l - y_1`, `x_A - x_{A+1-l}`, `y_B - y_{B+1-l}`.
    pub corner_offsets: [u32; 4],
    pub offsets_agree: bool,
    /// Smallest corner offset.
    pub d: u32,
    /// `x_{A+1-l} - x_l`.
    pub side: u32,
    /// `y_{B+1-l} - y_l`.
    pub side_rows: u32,
    pub is_square: bool,
    /// Positive diagonals through the upper-left and lower-right ring corners,
    /// then negative diagonals through the lower-left and upper-right ones.
    pub skew_diagonals: [Line; 4],
    pub skew_lengths: [u32; 4],
    /// `2n + 4D - 2L`.
    pub skew_bound: i64,
    /// Ring points lying on a selected diagonal.
    pub ring_queens: usize,
    /// `ring_queens == 2C`.
    pub tight: bool,
    /// Total length of the distinct diagonals through the ring queens.
    pub diag_length_sum_through_critical_ring: u64,
    /// Length of those diagonals that hold exactly one ring queen.
    pub single_hit_length: u64,
    /// `(|P| (n + 2D) + single_hit_length) / 2`, rounded up.
    pub half_length_bound: u64,
    /// `(C + 1) n + 2 (C + 1) D - L`.
    pub combined_bound: i64,
    /// `(C + 1) n`.
    pub target: u64,
    /// Whether the middle column is within `2D` of a ring side; `None` for even `A`.
    pub medial_cols_ok: Option<bool>,
    pub medial_rows_ok: Option<bool>,
}

impl CriticalRingReport {
    pub fn half_length_holds(&self) -> bool {
        self.diag_length_sum_through_critical_ring >= self.half_length_bound
    }

    pub fn skew_holds(&self) -> bool {
        self.skew_lengths.iter().map(|&l| l as i64).sum::<i64>() >= self.skew_bound
    }

    pub fn reaches_target(&self) -> bool {
        self.diag_length_sum_through_critical_ring >= self.target
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CriticalRing {
    Report(CriticalRingReport),
    NotApplicable { reason: String },
}

/// Locates the ring `l` with `2C = 2A + 2B + 4 - 8l` and measures it.
pub fn critical_ring_report(sel: &LineSelection) -> CriticalRing {
    let (a, b, c) = (sel.a(), sel.b(), sel.c());
    let not_applicable = |reason: String| CriticalRing::NotApplicable { reason };
    if a.abs_diff(b) > 1 {
        return not_applicable(format!("|A - B| = {} exceeds 1", a.abs_diff(b)));
    }
    let numerator = (a + b + 2) as i64 - c as i64;
    if c == 0 || numerator <= 0 || numerator % 4 != 0 {
        return not_applicable(format!("no ring level l with 2C = 2A + 2B + 4 - 8l (A={a}, B={b}, C={c})"));
    }
    let level = (numerator / 4) as usize;
    if 2 * level > a.min(b) + 1 {
        return not_applicable(format!("ring {level} does not exist in a {a}x{b} grid"));
    }
    let n = sel.dim().n();
    let x = |i: usize| sel.cols[i - 1];
    let y = |j: usize| sel.rows[j - 1];
    let (lo_i, hi_i, lo_j, hi_j) = (level, a + 1 - level, level, b + 1 - level);

    let corner_offsets = [x(lo_i) - x(1), y(lo_j) - y(1), x(a) - x(hi_i), y(b) - y(hi_j)];
    let d = *corner_offsets.iter().min().unwrap();
    let offsets_agree = corner_offsets.iter().all(|&o| o == corner_offsets[0]);
    let side = x(hi_i) - x(lo_i);
    let side_rows = y(hi_j) - y(lo_j);

    let dim = sel.dim();
    let skew_diagonals = [
        Line::through(Square::new(x(lo_i), y(hi_j)), LineKind::DiagPos),
        Line::through(Square::new(x(hi_i), y(lo_j)), LineKind::DiagPos),
        Line::through(Square::new(x(lo_i), y(lo_j)), LineKind::DiagNeg),
        Line::through(Square::new(x(hi_i), y(hi_j)), LineKind::DiagNeg),
    ];
    let skew_lengths = skew_diagonals.map(|l| l.length_unchecked(dim));
    let skew_bound = 2 * n as i64 + 4 * d as i64 - 2 * side as i64;

    let ring = rings_of(sel).into_iter().nth(level - 1).expect("level checked above");
    let ring_queens: Vec<Square> = ring.points.iter().copied().filter(|&p| sel.on_selected_diag(p)).collect();
    let mut hits: BTreeMap<Line, usize> = BTreeMap::new();
    for &p in &ring_queens {
        for kind in [LineKind::DiagPos, LineKind::DiagNeg] {
            *hits.entry(Line::through(p, kind)).or_default() += 1;
        }
    }
    let total: u64 = hits.keys().map(|l| l.length_unchecked(dim) as u64).sum();
    let single: u64 = hits
        .iter()
        .filter(|(_, &h)| h == 1)
        .map(|(l, _)| l.length_unchecked(dim) as u64)
        .sum();
    let twice_bound = ring_queens.len() as u64 * (n as u64 + 2 * d as u64) + single;

    let medial = |coords: &dyn Fn(usize) -> u32, len: usize, lo: usize, hi: usize| {
        (len % 2 == 1).then(|| {
            let mid = coords(len.div_ceil(2));
            (coords(hi) - mid).min(mid - coords(lo)) <= 2 * d
        })
    };

    CriticalRing::Report(CriticalRingReport {
        level,
        corner_offsets,
        offsets_agree,
        d,
        side,
        side_rows,
        is_square: side == side_rows,
        skew_diagonals,
        skew_lengths,
        skew_bound,
        ring_queens: ring_queens.len(),
        tight: ring_queens.len() == 2 * c,
        diag_length_sum_through_critical_ring: total,
        single_hit_length: single,
        half_length_bound: twice_bound.div_ceil(2),
        combined_bound: (c as i64 + 1) * n as i64 + 2 * (c as i64 + 1) * d as i64 - side as i64,
        target: (c as u64 + 1) * n as u64,
        medial_cols_ok: medial(&x, a, lo_i, hi_i),
        medial_rows_ok: medial(&y, b, lo_j, hi_j),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::uneven_hexagon;

    fn dim(n: u32) -> BoardDim {
        BoardDim::new(n).unwrap()
    }

    fn sq(x: u32, y: u32) -> Square {
        Square::new(x, y)
    }

    fn sel(n: u32, cols: &[u32], rows: &[u32], diags: &[Line]) -> LineSelection {
        LineSelection::new(dim(n), cols.to_vec(), rows.to_vec(), diags.iter().copied()).unwrap()
    }

    #[test]
    fn selection_validation() {
        assert!(LineSelection::new(dim(5), vec![2, 1], vec![1], []).is_err());
        assert!(LineSelection::new(dim(5), vec![], vec![1], []).is_err());
        assert!(LineSelection::new(dim(5), vec![1, 6], vec![1], []).is_err());
        assert!(LineSelection::new(dim(5), vec![1], vec![1], [Line::row(1)]).is_err());
        assert!(LineSelection::new(dim(5), vec![1], vec![1], [Line::diag_pos(5)]).is_err());
    }

    #[test]
    fn triple_intersection_examples() {
        let s = sel(8, &[1, 2, 3], &[1, 2, 3], &[Line::diag_pos(0)]);
        assert_eq!(triple_intersections(&s), BTreeSet::from([sq(1, 1), sq(2, 2), sq(3, 3)]));

        let all: Vec<Line> = (-2..=2).map(Line::diag_pos).collect();
        let s = sel(8, &[1, 2, 3], &[1, 2, 3], &all);
        assert_eq!(triple_intersections(&s).len(), 9);

        let s = sel(20, &[1, 2, 3], &[1, 2, 3], &[Line::diag_pos(-1), Line::diag_pos(0), Line::diag_pos(1)]);
        assert_eq!(triple_intersections(&s).len(), 7);
    }

    #[test]
    fn ring_examples() {
        let r = rings_of(&sel(8, &[1, 2, 3, 4], &[1, 2, 3, 4], &[]));
        assert_eq!(r.iter().map(|r| r.points.len()).collect::<Vec<_>>(), vec![12, 4]);
        let r = rings_of(&sel(8, &[1], &[1], &[]));
        assert_eq!(r.iter().map(|r| r.points.len()).collect::<Vec<_>>(), vec![1]);
        let r = rings_of(&sel(8, &[1, 2, 3, 4, 5], &[1, 2, 3], &[]));
        assert_eq!(r.iter().map(|r| r.points.len()).collect::<Vec<_>>(), vec![12, 3]);
    }

    #[test]
    fn ring_sizes_partition_grid() {
        for a in 1..=12usize {
            for b in 1..=12usize {
                let cols: Vec<u32> = (1..=a as u32).collect();
                let rows: Vec<u32> = (1..=b as u32).collect();
                let rings = rings_of(&sel(12, &cols, &rows, &[]));
                assert_eq!(rings.iter().map(|r| r.points.len()).sum::<usize>(), a * b);
                for r in &rings {
                    let l = r.level;
                    let expected = if a >= 2 * l && b >= 2 * l {
                        2 * a + 2 * b + 4 - 8 * l
                    } else if a.min(b) == 2 * l - 1 {
                        a.max(b) - 2 * (l - 1)
                    } else {
                        0
                    };
                    assert_eq!(r.points.len(), expected, "a={a} b={b} l={l}");
                }
            }
        }
    }

    #[test]
    fn ring_hit_examples() {
        let s = sel(8, &[2, 5], &[2, 5], &[]);
        let ring = &rings_of(&s)[0];
        assert_eq!(ring_diag_hits(ring, Line::diag_pos(0)), 2);
        assert_eq!(ring_diag_hits(ring, Line::diag_neg(7)), 2);
        assert_eq!(ring_diag_hits(ring, Line::diag_pos(6)), 0);
    }

    #[test]
    fn ring_bound_examples() {
        let s = sel(20, &[1, 2], &[1, 2], &[]);
        let r = ring_bound_check(&s);
        assert_eq!(r.points, 0);
        assert!(r.holds());

        let s = sel(20, &[1, 2, 3], &[1, 2, 3], &[Line::diag_pos(0), Line::diag_neg(4)]);
        let r = ring_bound_check(&s);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn nonsharing_examples() {
        let p = Placement::from_coords(8, &[(1, 1), (2, 2), (5, 5)]).unwrap();
        assert_eq!(max_nonsharing_queens(&p).0, 1);
        let p = Placement::from_coords(4, &[(1, 1), (1, 3), (3, 1)]).unwrap();
        let (count, witness) = max_nonsharing_queens(&p);
        assert_eq!(count, 2);
        assert_eq!(witness.len(), 2);
        assert!(!(witness.contains(&sq(1, 3)) && witness.contains(&sq(3, 1))));
    }

    #[test]
    fn cover_examples() {
        let p = Placement::from_coords(4, &[(1, 1), (1, 3), (3, 1)]).unwrap();
        let (c, lines) = min_diag_cover(&p);
        assert_eq!(c, 2);
        assert!(p.queens().iter().all(|&q| lines.iter().any(|l| l.contains(q))));

        let one = Placement::from_coords(4, &[(2, 3)]).unwrap();
        assert_eq!(min_diag_cover(&one).0, 1);

        let hex = uneven_hexagon(9, dim(20)).unwrap();
        assert_eq!(min_diag_cover(&hex).0, 3);
        assert_eq!(max_nonsharing_queens(&hex).0, 3);
    }

    #[test]
    fn certificate_examples() {
        let p = Placement::from_coords(8, &[(1, 1)]).unwrap();
        let cert = lower_bound_certificate(&p).unwrap();
        assert_eq!(cert.budget, 3);
        assert_eq!(cert.total_length, 25);
        assert!(cert.is_sound());

        let hex = uneven_hexagon(9, dim(20)).unwrap();
        let cert = lower_bound_certificate(&hex).unwrap();
        assert_eq!(cert.budget, 9);
        assert!(cert.total_length >= 180);
        assert_eq!(cert.f_closed, 7);
        assert!(hex.len() as u64 <= cert.f_closed);
        assert!(cert.lines.len() <= cert.a + cert.b + 2 * cert.c);

        assert!(lower_bound_certificate(&Placement::empty(dim(4))).is_err());
    }

    #[test]
    fn critical_ring_not_applicable() {
        let s = sel(20, &[1, 2, 3, 4, 5], &[1, 2, 3], &[Line::diag_pos(0)]);
        assert!(matches!(critical_ring_report(&s), CriticalRing::NotApplicable { .. }));
        let s = sel(20, &[1, 2, 3], &[1, 2, 3], &[Line::diag_pos(0)]);
        assert!(matches!(critical_ring_report(&s), CriticalRing::NotApplicable { .. }));
    }

    #[test]
    fn critical_ring_of_corner_anchored_hexagon() {
        // A = B = 3, C = 4: 2C = 8 = 2A + 2B + 4 - 8, so the critical ring is ring 1.
        let diags = [Line::diag_pos(-1), Line::diag_pos(0), Line::diag_pos(1), Line::diag_pos(2)];
        let s = sel(20, &[1, 2, 3], &[1, 2, 3], &diags);
        let CriticalRing::Report(r) = critical_ring_report(&s) else { panic!("expected a report") };
        assert_eq!(r.level, 1);
        assert_eq!(r.d, 0);
        assert!(r.offsets_agree && r.is_square);
        assert_eq!(r.side, 2);
        assert_eq!(r.combined_bound, 5 * 20 - 2);
        assert!(r.half_length_holds());
        assert!(r.skew_holds());
    }
}
