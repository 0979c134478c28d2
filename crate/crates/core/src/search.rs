//! Exact searches used to certify optimality on small boards.
//!
//! [`exact_min_covered`] finds the fewest covered squares over every placement
//! of `k` queens by branch and bound. Queens are added in increasing square
//! order, the covered set of a partial placement is kept as a 256-bit mask, and
//! a branch is cut as soon as its covered count exceeds the best complete
//! placement found so far (covering only grows as queens are added).
//!
//! Symmetry: a set is only visited if no image of it under the eight board
//! symmetries has a smaller first square. That keeps at least one member of
//! every orbit, so the optimum is unchanged.
//!
//! The first queen's square splits the search into independent work items that
//! run on a rayon pool. They share only the best bound (an atomic minimum) and
//! the node counter. Ties are never pruned, so every optimal placement is
//! reached regardless of scheduling, and the reported witness set is the same
//! for any thread count.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::analysis::LineSelection;
use crate::board::{BoardDim, Line, LineKind, Placement, Square};
use crate::error::{Error, Result};

/// Largest board the exact search accepts.
pub const MAX_EXACT_N: u32 = 16;
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 uses rayon's default.
    pub threads: usize,
    /// Node budget; the search fails once it is exceeded.
    pub budget: u64,
    pub symmetry: bool,
    /// Report every canonical optimal placement rather than only the least.
    pub all_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 0, budget: DEFAULT_BUDGET, symmetry: true, all_witnesses: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub k: usize,
    pub n: u32,
    /// Minimum covered count.
    pub optimum: usize,
    /// Optimal placements in canonical form, sorted.
    pub witnesses: Vec<Placement>,
    pub nodes_explored: u64,
    #[serde(rename = "wall_time_ms", serialize_with = "millis")]
    pub wall_time: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

type Mask = [u64; 4];

#[inline]
fn or(a: &Mask, b: &Mask) -> Mask {
    [a[0] | b[0], a[1] | b[1], a[2] | b[2], a[3] | b[3]]
}

#[inline]
fn popcount(a: &Mask) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

/// The eight symmetries of the square acting on 0-based `(x, y)`.
fn dihedral(t: usize, x: u32, y: u32, n: u32) -> (u32, u32) {
    let m = n - 1;
    match t {
        0 => (x, y),
        1 => (m - x, y),
        2 => (x, m - y),
        3 => (m - x, m - y),
        4 => (y, x),
        5 => (m - y, x),
        6 => (y, m - x),
        _ => (m - y, m - x),
    }
}

/// Lexicographically least sorted index list among the eight images of
/// `cells` (row-major, 0-based).
pub fn canonical_cells(cells: &[usize], n: u32) -> Vec<usize> {
    (0..8)
        .map(|t| {
            let mut img: Vec<usize> = cells
                .iter()
                .map(|&c| {
                    let (x, y) = dihedral(t, (c % n as usize) as u32, (c / n as usize) as u32, n);
                    (y * n + x) as usize
                })
                .collect();
            img.sort_unstable();
            img
        })
        .min()
        .unwrap_or_default()
}

/// Canonical representative of a placement under the board symmetries.
pub fn canonical_form(p: &Placement) -> Placement {
    let n = p.n();
    let cells: Vec<usize> = p.queens().iter().map(|q| cell_of(*q, n)).collect();
    placement_of(&canonical_cells(&cells, n), p.dim())
}

fn cell_of(q: Square, n: u32) -> usize {
    ((q.y - 1) * n + (q.x - 1)) as usize
}

fn placement_of(cells: &[usize], dim: BoardDim) -> Placement {
    let n = dim.n() as usize;
    Placement::new(dim, cells.iter().map(|&c| Square::new((c % n) as u32 + 1, (c / n) as u32 + 1)))
        .expect("cells come from the board")
}

struct Tables {
    cover: Vec<Mask>,
    /// Least index in each square's symmetry orbit.
    orbit_min: Vec<usize>,
}

impl Tables {
    fn new(dim: BoardDim) -> Self {
        let n = dim.n();
        let cells = (n * n) as usize;
        let mut cover = vec![[0u64; 4]; cells];
        for (c, mask) in cover.iter_mut().enumerate() {
            let q = Square::new((c % n as usize) as u32 + 1, (c / n as usize) as u32 + 1);
            for kind in LineKind::ALL {
                for s in Line::through(q, kind).squares(dim).expect("line through a board square") {
                    let b = cell_of(s, n);
                    mask[b / 64] |= 1 << (b % 64);
                }
            }
        }
        let orbit_min = (0..cells)
            .map(|c| {
                let (x, y) = ((c % n as usize) as u32, (c / n as usize) as u32);
                (0..8)
                    .map(|t| {
                        let (a, b) = dihedral(t, x, y, n);
                        (b * n + a) as usize
                    })
                    .min()
                    .unwrap()
            })
            .collect();
        Tables { cover, orbit_min }
    }
}

struct Shared<'a> {
    tables: &'a Tables,
    k: usize,
    cells: usize,
    symmetry: bool,
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
}

struct Worker<'a, 'b> {
    shared: &'b Shared<'a>,
    root: usize,
    chosen: Vec<usize>,
    local_nodes: u64,
    best: usize,
    witnesses: Vec<Vec<usize>>,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl Worker<'_, '_> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes.is_multiple_of(FLUSH_EVERY) {
            let total = self.shared.nodes.fetch_add(FLUSH_EVERY, Ordering::Relaxed) + FLUSH_EVERY;
            if total > self.shared.budget {
                self.shared.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    fn record(&mut self, covered: usize) {
        if covered < self.best {
            self.best = covered;
            self.witnesses.clear();
        }
        if covered == self.best {
            self.witnesses.push(self.chosen.clone());
        }
        self.shared.best.fetch_min(covered, Ordering::Relaxed);
    }

    fn dfs(&mut self, start: usize, mask: Mask) -> bool {
        let depth = self.chosen.len();
        let k = self.shared.k;
        if depth == k {
            self.record(popcount(&mask));
            return true;
        }
        let last = self.shared.cells - (k - depth);
        for q in start..=last {
            if self.shared.symmetry && self.shared.tables.orbit_min[q] < self.root {
                continue;
            }
            if !self.tick() {
                return false;
            }
            let next = or(&mask, &self.shared.tables.cover[q]);
            let bound = popcount(&next);
            if bound > self.shared.best.load(Ordering::Relaxed) || bound > self.best {
                continue;
            }
            self.chosen.push(q);
            let ok = self.dfs(q + 1, next);
            self.chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Minimum covered count over all placements of `k` queens.
pub fn exact_min_covered(k: usize, dim: BoardDim, opts: SearchOptions) -> Result<SearchResult> {
    let n = dim.n();
    if n > MAX_EXACT_N {
        return Err(Error::domain(format!("exact search supports n <= {MAX_EXACT_N} (got {n})")));
    }
    let cells = (n * n) as usize;
    if k > cells {
        return Err(Error::domain(format!("cannot place {k} queens on {cells} squares")));
    }
    let started = Instant::now();
    if k == 0 {
        return Ok(SearchResult {
            k,
            n,
            optimum: 0,
            witnesses: vec![Placement::empty(dim)],
            nodes_explored: 0,
            wall_time: started.elapsed(),
        });
    }

    let tables = Tables::new(dim);
    let shared = Shared {
        tables: &tables,
        k,
        cells,
        symmetry: opts.symmetry,
        best: AtomicUsize::new(usize::MAX),
        nodes: AtomicU64::new(0),
        budget: opts.budget,
        aborted: AtomicBool::new(false),
    };
    let roots: Vec<usize> = (0..=cells - k)
        .filter(|&r| !opts.symmetry || tables.orbit_min[r] == r)
        .collect();

    let run_root = |root: usize| {
        let mut w = Worker {
            shared: &shared,
            root,
            chosen: vec![root],
            local_nodes: 1,
            best: usize::MAX,
            witnesses: Vec::new(),
        };
        w.dfs(root + 1, tables.cover[root]);
        shared.nodes.fetch_add(w.local_nodes % FLUSH_EVERY, Ordering::Relaxed);
        (w.best, w.witnesses)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    let per_root: Vec<(usize, Vec<Vec<usize>>)> =
        pool.install(|| roots.par_iter().map(|&r| run_root(r)).collect());

    let explored = shared.nodes.load(Ordering::Relaxed);
    if shared.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { budget: opts.budget, explored });
    }

    let optimum = per_root.iter().map(|(b, _)| *b).min().expect("at least one root");
    let canonical: BTreeSet<Vec<usize>> = per_root
        .into_iter()
        .filter(|(b, _)| *b == optimum)
        .flat_map(|(_, ws)| ws)
        .map(|w| canonical_cells(&w, n))
        .collect();
    let mut witnesses: Vec<Placement> = canonical.iter().map(|c| placement_of(c, dim)).collect();
    if !opts.all_witnesses {
        witnesses.truncate(1);
    }
    Ok(SearchResult {
        k,
        n,
        optimum,
        witnesses,
        nodes_explored: explored,
        wall_time: started.elapsed(),
    })
}

/// Which diagonals a triple-point search may pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagFamilies {
    /// Positive diagonals only, as for a placement tucked into one corner.
    LongOnly,
    Both,
}

/// Largest coordinate range the triple-point search accepts.
pub const MAX_TRIPLE_RANGE: u32 = 10;

fn check_triple_args(a: u32, b: u32, range: u32) -> Result<()> {
    if range > MAX_TRIPLE_RANGE {
        return Err(Error::domain(format!(
            "triple-point search supports coordinate ranges up to {MAX_TRIPLE_RANGE} (got {range})"
        )));
    }
    if a == 0 || b == 0 || a > range || b > range {
        return Err(Error::domain(format!(
            "need 1 <= A, B <= R (got A = {a}, B = {b}, R = {range})"
        )));
    }
    Ok(())
}

/// k-subsets of `2..=range` with `1` prepended, in lexicographic order.
///
/// Translating a grid does not change which points diagonals can share, so
/// the first coordinate can be pinned to 1.
fn anchored_subsets(size: u32, range: u32) -> Vec<Vec<u32>> {
    fn go(from: u32, range: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in from..=range + 1 - left {
            cur.push(v);
            go(v + 1, range, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, range, size - 1, &mut vec![1], &mut out);
    out
}

/// Candidate diagonals of one grid with the grid points on each, as bitmasks
/// over the `a * b` points.
fn candidate_diagonals(cols: &[u32], rows: &[u32], families: DiagFamilies) -> Vec<(Line, u128)> {
    let mut kinds = vec![LineKind::DiagPos];
    if families == DiagFamilies::Both {
        kinds.push(LineKind::DiagNeg);
    }
    let mut lines: Vec<(Line, u128)> = Vec::new();
    for kind in kinds {
        let mut by_index: std::collections::BTreeMap<i32, u128> = Default::default();
        for (i, &x) in cols.iter().enumerate() {
            for (j, &y) in rows.iter().enumerate() {
                let line = Line::through(Square::new(x, y), kind);
                *by_index.entry(line.index).or_default() |= 1u128 << (i * rows.len() + j);
            }
        }
        lines.extend(by_index.into_iter().map(|(idx, m)| (Line::new(kind, idx), m)));
    }
    // Largest first; ties keep family/index order.
    lines.sort_by_key(|(l, m)| (std::cmp::Reverse(m.count_ones()), *l));
    lines
}

struct Cover<'a> {
    lines: &'a [(Line, u128)],
    c: usize,
    best: u32,
    best_pick: Vec<usize>,
    pick: Vec<usize>,
    nodes: u64,
    stop_at: Option<u32>,
}

impl Cover<'_> {
    fn run(&mut self, from: usize, covered: u128) {
        let have = covered.count_ones();
        if have > self.best {
            self.best = have;
            self.best_pick = self.pick.clone();
        }
        if self.pick.len() == self.c || self.stop_at.is_some_and(|t| self.best >= t) {
            return;
        }
        let slots = self.c - self.pick.len();
        for i in from..self.lines.len() {
            self.nodes += 1;
            // Lines are sorted by size, so the next `slots` bound the gain.
            let optimistic: u32 = self.lines[i..].iter().take(slots).map(|(_, m)| m.count_ones()).sum();
            if have + optimistic <= self.best {
                break;
            }
            self.pick.push(i);
            self.run(i + 1, covered | self.lines[i].1);
            self.pick.pop();
            if self.stop_at.is_some_and(|t| self.best >= t) {
                return;
            }
        }
    }
}

/// Best diagonal choice for one fixed grid: `(points, chosen lines, nodes)`.
fn best_for_grid(cols: &[u32], rows: &[u32], c: usize, families: DiagFamilies, stop_at: Option<u32>) -> (u32, Vec<Line>, u64) {
    let lines = candidate_diagonals(cols, rows, families);
    let mut cover = Cover { lines: &lines, c, best: 0, best_pick: Vec::new(), pick: Vec::new(), nodes: 0, stop_at };
    cover.run(0, 0);
    let mut chosen: Vec<Line> = cover.best_pick.iter().map(|&i| lines[i].0).collect();
    // Fill up to `c` lines so the witness uses the whole budget.
    for (l, _) in &lines {
        if chosen.len() >= c {
            break;
        }
        if !chosen.contains(l) {
            chosen.push(*l);
        }
    }
    (cover.best, chosen, cover.nodes)
}

fn selection(range: u32, cols: &[u32], rows: &[u32], diags: Vec<Line>) -> LineSelection {
    LineSelection::new(BoardDim::new(range).expect("range >= 1"), cols.to_vec(), rows.to_vec(), diags)
        .expect("search only builds valid selections")
}

/// Points, column-set index, row-set index and chosen diagonals.
type GridBest = (u32, usize, usize, Vec<Line>);

/// Most grid points reachable by `a` columns and `b` rows with coordinates in
/// `1..=range` and `c` diagonals, with a witness selection on a `range`-board.
pub fn max_triple_points(
    a: u32,
    b: u32,
    c: u32,
    families: DiagFamilies,
    range: u32,
    budget: u64,
) -> Result<(usize, LineSelection)> {
    check_triple_args(a, b, range)?;
    let col_sets = anchored_subsets(a, range);
    let row_sets = anchored_subsets(b, range);
    let nodes = AtomicU64::new(0);
    let results: Vec<Option<GridBest>> = col_sets
        .par_iter()
        .enumerate()
        .map(|(ci, cols)| {
            let mut best: Option<GridBest> = None;
            for (ri, rows) in row_sets.iter().enumerate() {
                let (pts, lines, used) = best_for_grid(cols, rows, c as usize, families, None);
                if nodes.fetch_add(used + 1, Ordering::Relaxed) > budget {
                    return None;
                }
                if best.as_ref().is_none_or(|(b, ..)| pts > *b) {
                    best = Some((pts, ci, ri, lines));
                }
            }
            best
        })
        .collect();
    let explored = nodes.load(Ordering::Relaxed);
    if explored > budget || results.iter().any(Option::is_none) {
        return Err(Error::BudgetExceeded { budget, explored });
    }
    // Highest count, earliest grid on ties.
    let (pts, ci, ri, lines) = results
        .into_iter()
        .flatten()
        .min_by_key(|(p, ci, ri, _)| (std::cmp::Reverse(*p), *ci, *ri))
        .expect("at least one grid");
    Ok((pts as usize, selection(range, &col_sets[ci], &row_sets[ri], lines)))
}

/// First selection (in enumeration order) reaching `target` triple points.
pub fn find_packed_arrangement(
    a: u32,
    b: u32,
    c: u32,
    target: usize,
    families: DiagFamilies,
    range: u32,
) -> Result<Option<(LineSelection, BTreeSet<Square>)>> {
    check_triple_args(a, b, range)?;
    let col_sets = anchored_subsets(a, range);
    let row_sets = anchored_subsets(b, range);
    let found = col_sets.par_iter().find_map_first(|cols| {
        row_sets.iter().find_map(|rows| {
            let (pts, lines, _) = best_for_grid(cols, rows, c as usize, families, Some(target as u32));
            (pts as usize >= target).then(|| selection(range, cols, rows, lines))
        })
    });
    Ok(found.map(|sel| {
        let points = crate::analysis::triple_intersections(&sel);
        (sel, points)
    }))
}
