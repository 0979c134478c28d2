//! Named property suites, each checking library results against small
//! independent oracles.
//!
//! Randomized suites draw from a ChaCha stream seeded by the caller, so a run
//! is reproducible from its seed alone.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    lower_bound_certificate, max_nonsharing_queens, min_diag_cover, rings_of, triple_intersections,
    LineSelection,
};
use crate::board::{diag_length_sum, BoardDim, Line, LineKind, Placement, Square};
use crate::constructions::{construct_best, nine_queens, uneven_hexagon, HexSpec, Corner};
use crate::error::{Error, Result};
use crate::formulas::{
    corner_optimum, delta, f_bound, f_closed, f_of, g_of, hexagon_block_count, m_star,
    regular_hexagon_count,
};
use crate::search::{max_triple_points, DiagFamilies, DEFAULT_BUDGET};

pub const DEFAULT_SEED: u64 = 20_180_412;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Formulas,
    Lemma2,
    Rings,
    Konig,
    Eq1,
    Constructions,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Formulas, Suite::Lemma2, Suite::Rings, Suite::Konig, Suite::Eq1, Suite::Constructions];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Lemma2 => "lemma2",
            Suite::Rings => "rings",
            Suite::Konig => "konig",
            Suite::Eq1 => "eq1",
            Suite::Constructions => "constructions",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite `{s}`")))
    }
}

/// Outcome of one suite. Failures are capped; `checks` counts everything.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

const MAX_REPORTED: usize = 20;

struct Tally {
    checks: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    fn finish(mut self, suite: Suite) -> SuiteReport {
        if self.failed as usize > self.failures.len() {
            self.failures.push(format!("... {} failures in total", self.failed));
        }
        SuiteReport { suite, checks: self.checks, passed: self.failed == 0, failures: self.failures }
    }
}

pub fn run(suite: Suite, seed: u64) -> VerifyReport {
    let suites: Vec<SuiteReport> = match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, seed)).collect(),
        s => vec![run_one(s, seed)],
    };
    let passed = suites.iter().all(|s| s.passed);
    VerifyReport { seed, suites, passed }
}

fn run_one(suite: Suite, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new();
    match suite {
        Suite::Formulas => formulas(&mut t),
        Suite::Lemma2 => lemma2(&mut t),
        Suite::Rings => rings(&mut t),
        Suite::Konig => konig(&mut t, &mut rng, 10_000),
        Suite::Eq1 => eq1(&mut t, &mut rng, 10_000),
        Suite::Constructions => constructions(&mut t),
        Suite::All => unreachable!(),
    }
    t.finish(suite)
}

fn formulas(t: &mut Tally) {
    for (m, g) in [(3, 1), (10, 9), (18, 28)] {
        t.check(g_of(m) == g, || format!("G({m}) = {} expected {g}", g_of(m)));
    }
    t.check(f_closed(14) == Ok(17), || "F(14) != 17".into());
    for m in 2..=2000u64 {
        // Brute maximization over every split, independent of f_of.
        let brute = (2..=m)
            .map(|a| {
                let c = m - a;
                let rings: u64 = (1..=(a + 2) / 4).map(|l| (2 * c).min(2 * a + 4 - 8 * l)).sum();
                rings + u64::from(a % 4 == 2)
            })
            .max()
            .unwrap();
        let closed = f_closed(m).unwrap();
        t.check(brute == closed, || format!("F({m}): maximized {brute}, closed {closed}"));
        t.check(f_of(m).map(|f| f.value) == Ok(closed), || format!("f_of({m}) disagrees"));
        t.check(g_of(m) <= closed, || format!("G({m}) > F({m})"));
    }
    for k in 1..=400u64 {
        let ms = m_star(k).unwrap();
        t.check(g_of(ms) >= k && (ms == 0 || g_of(ms - 1) < k), || format!("m_star({k}) = {ms}"));
    }
    for side in 1..=40u64 {
        let w = 2 * side - 1;
        t.check(regular_hexagon_count(side) == hexagon_block_count(w, w), || {
            format!("hexagon of side {side}")
        });
        t.check(regular_hexagon_count(side) == Ok(3 * side * side - 3 * side + 1), || {
            format!("centred hexagonal number {side}")
        });
    }
    for a in 1..=30u64 {
        for c in 1..2 * a {
            let counted = hexagon_points(a, c);
            t.check(hexagon_block_count(a, c) == Ok(counted), || format!("hexagon ({a}, {c}) count"));
        }
    }
}

/// Points of an `a x a` block on the `c` most central positive diagonals.
fn hexagon_points(a: u64, c: u64) -> u64 {
    let (lo, hi) = (-(((c - 1) / 2) as i64), (c / 2) as i64);
    let mut count = 0;
    for x in 0..a as i64 {
        for y in 0..a as i64 {
            count += u64::from((lo..=hi).contains(&(x - y)));
        }
    }
    count
}

fn lemma2(t: &mut Tally) {
    for n in 1..=12u32 {
        let dim = BoardDim::new(n).unwrap();
        for sq in dim.squares() {
            // Walk both diagonals square by square.
            let mut walked = 0u32;
            for (dx, dy) in [(1i32, 1i32), (1, -1)] {
                let (mut x, mut y) = (sq.x as i32, sq.y as i32);
                while x - dx >= 1 && y - dy >= 1 && x - dx <= n as i32 && y - dy <= n as i32 {
                    x -= dx;
                    y -= dy;
                }
                while x >= 1 && y >= 1 && x <= n as i32 && y <= n as i32 {
                    walked += 1;
                    x += dx;
                    y += dy;
                }
            }
            let edge = (sq.x - 1).min(sq.y - 1).min(n - sq.x).min(n - sq.y);
            t.check(walked == n + 1 + 2 * edge, || format!("n={n} {sq}: walked {walked}"));
            t.check(diag_length_sum(sq, dim) == walked, || format!("n={n} {sq}: diag_length_sum"));
        }
    }
}

/// Every diagonal meets every ring at most twice.
///
/// Ring `l` of a grid is the outer shell of the sub-grid cut out by its `l`-th
/// outermost lines, and that shell lies inside the boundary of the rectangle
/// spanned by those lines. So checking every rectangle on the board covers
/// every grid of every size; grids with A, B <= 8 in a window of width 8 are
/// also checked directly through the ring partition.
fn rings(t: &mut Tally) {
    let n = 16i32;
    for x1 in 1..=n {
        for x2 in x1..=n {
            for y1 in 1..=n {
                for y2 in y1..=n {
                    let mut pos: HashMap<i32, u32> = HashMap::new();
                    let mut neg: HashMap<i32, u32> = HashMap::new();
                    for x in x1..=x2 {
                        for y in y1..=y2 {
                            if x == x1 || x == x2 || y == y1 || y == y2 {
                                *pos.entry(x - y).or_default() += 1;
                                *neg.entry(x + y).or_default() += 1;
                            }
                        }
                    }
                    let worst = pos.values().chain(neg.values()).max().copied().unwrap_or(0);
                    t.check(worst <= 2, || format!("rectangle [{x1},{x2}]x[{y1},{y2}] meets a diagonal {worst} times"));
                }
            }
        }
    }

    let dim = BoardDim::new(8).unwrap();
    let subsets: Vec<Vec<u32>> = (1u32..1 << 8)
        .map(|mask| (1..=8).filter(|b| mask >> (b - 1) & 1 == 1).collect())
        .filter(|s: &Vec<u32>| s[0] == 1)
        .collect();
    for cols in &subsets {
        for rows in &subsets {
            let sel = LineSelection::new(dim, cols.clone(), rows.clone(), []).unwrap();
            for ring in rings_of(&sel) {
                let mut hits: HashMap<Line, u32> = HashMap::new();
                for &p in &ring.points {
                    *hits.entry(Line::through(p, LineKind::DiagPos)).or_default() += 1;
                    *hits.entry(Line::through(p, LineKind::DiagNeg)).or_default() += 1;
                }
                let worst = hits.values().max().copied().unwrap_or(0);
                t.check(worst <= 2, || format!("cols {cols:?} rows {rows:?} ring {} hit {worst} times", ring.level));
            }
        }
    }
}

fn random_placement(rng: &mut ChaCha8Rng, max_n: u32, max_k: usize) -> Placement {
    let n = rng.gen_range(1..=max_n);
    let dim = BoardDim::new(n).unwrap();
    let mut squares: Vec<Square> = dim.squares().collect();
    squares.shuffle(rng);
    let k = rng.gen_range(1..=max_k.min(squares.len()));
    Placement::new(dim, squares.into_iter().take(k)).unwrap()
}

/// Maximum set of queens no two on a common diagonal, by trying every subset.
fn brute_matching(queens: &[Square]) -> usize {
    let k = queens.len();
    (0u32..1 << k)
        .filter(|&mask| {
            let chosen: Vec<&Square> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &queens[i]).collect();
            chosen.iter().enumerate().all(|(i, a)| {
                chosen[i + 1..].iter().all(|b| {
                    a.x as i32 - a.y as i32 != b.x as i32 - b.y as i32 && a.x + a.y != b.x + b.y
                })
            })
        })
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

/// Fewest diagonals meeting every queen: choose the positive ones, take the
/// negative diagonals of whatever is left.
fn brute_cover(queens: &[Square]) -> usize {
    let pos: Vec<i32> = queens.iter().map(|q| q.x as i32 - q.y as i32).collect::<BTreeSet<_>>().into_iter().collect();
    (0u32..1 << pos.len())
        .map(|mask| {
            let chosen: BTreeSet<i32> = (0..pos.len()).filter(|i| mask >> i & 1 == 1).map(|i| pos[i]).collect();
            let rest: BTreeSet<u32> = queens
                .iter()
                .filter(|q| !chosen.contains(&(q.x as i32 - q.y as i32)))
                .map(|q| q.x + q.y)
                .collect();
            chosen.len() + rest.len()
        })
        .min()
        .unwrap_or(0)
}

fn konig(t: &mut Tally, rng: &mut ChaCha8Rng, samples: usize) {
    for _ in 0..samples {
        let p = random_placement(rng, 10, 8);
        let queens: Vec<Square> = p.queens().iter().copied().collect();
        let (matched, witness) = max_nonsharing_queens(&p);
        let (covered, cover) = min_diag_cover(&p);
        let brute_m = brute_matching(&queens);
        let brute_c = brute_cover(&queens);
        t.check(matched == covered, || format!("{}: matching {matched} vs cover {covered}", p.to_json()));
        t.check(matched == brute_m, || format!("{}: matching {matched} vs exhaustive {brute_m}", p.to_json()));
        t.check(covered == brute_c, || format!("{}: cover {covered} vs exhaustive {brute_c}", p.to_json()));
        t.check(witness.len() == matched && cover.len() == covered, || format!("{}: witness sizes", p.to_json()));
        t.check(queens.iter().all(|&q| cover.iter().any(|l| l.contains(q))), || {
            format!("{}: cover misses a queen", p.to_json())
        });
        t.check(brute_matching(&witness) == witness.len(), || format!("{}: witnesses share a diagonal", p.to_json()));
    }
}

/// Ring bound for a selection of `rc` rows and columns and `c` diagonals.
fn eq1_bound(rc: u64, c: u64) -> u64 {
    if c == 0 {
        0
    } else {
        f_bound(rc, c) + delta(rc)
    }
}

fn random_selection(rng: &mut ChaCha8Rng, n: u32) -> LineSelection {
    let dim = BoardDim::new(n).unwrap();
    let pick = |rng: &mut ChaCha8Rng| {
        let count = rng.gen_range(1..=8.min(n as usize));
        let mut v: Vec<u32> = rand::seq::index::sample(rng, n as usize, count)
            .into_iter()
            .map(|i| i as u32 + 1)
            .collect();
        v.sort_unstable();
        v
    };
    let cols = pick(rng);
    let rows = pick(rng);
    let mut diags: Vec<Line> = dim.lines().filter(|l| l.kind.is_diagonal()).collect();
    diags.shuffle(rng);
    let c = rng.gen_range(0..=8);
    LineSelection::new(dim, cols, rows, diags.into_iter().take(c)).unwrap()
}

fn eq1(t: &mut Tally, rng: &mut ChaCha8Rng, samples: usize) {
    for _ in 0..samples {
        let sel = random_selection(rng, 16);
        let points = triple_intersections(&sel).len() as u64;
        let rc = (sel.a() + sel.b()) as u64;
        let bound = eq1_bound(rc, sel.c() as u64);
        let f = f_closed(rc + sel.c() as u64).unwrap();
        t.check(points <= bound && points <= f, || {
            format!("cols {:?} rows {:?} diags {:?}: {points} > {bound}", sel.cols(), sel.rows(), sel.diags())
        });
    }
    for a in 1..=4u32 {
        for b in 1..=4u32 {
            for c in 0..=4u32 {
                match max_triple_points(a, b, c, DiagFamilies::Both, 8, DEFAULT_BUDGET) {
                    Ok((best, _)) => {
                        let bound = eq1_bound((a + b) as u64, c as u64);
                        t.check(best as u64 <= bound, || format!("({a},{b},{c}) reaches {best} > {bound}"));
                    }
                    Err(e) => t.check(false, || format!("({a},{b},{c}): {e}")),
                }
            }
        }
    }
}

fn constructions(t: &mut Tally) {
    for m in 3..=60u32 {
        let dim = BoardDim::new(2 * m).unwrap();
        let p = uneven_hexagon(m, dim).unwrap();
        let want = corner_optimum(m as u64) as usize;
        t.check(p.len() == want, || format!("uneven hexagon {m}: {} queens, want {want}", p.len()));
        let spec = HexSpec::balanced(m, Corner::BottomLeft).unwrap();
        t.check(spec.budget() == m, || format!("uneven hexagon {m}: line budget {}", spec.budget()));
        let ls = p.lines();
        let long = ls.family(LineKind::DiagPos).len() as u32;
        let occupied = ls.family(LineKind::Row).len() as u32 + ls.family(LineKind::Col).len() as u32 + long;
        // At m = 4 the two diagonals clamp to one.
        let want_lines = if m == 4 { 3 } else { m };
        t.check(occupied == want_lines, || format!("uneven hexagon {m}: {occupied} lines"));
    }
    let p = nine_queens(BoardDim::new(11).unwrap()).unwrap();
    let covered = covered_by_scan(&p);
    t.check(covered == 89, || format!("nine queens on 11 cover {covered}"));
    let dim = BoardDim::new(50).unwrap();
    for k in 1..=30usize {
        match construct_best(k, dim) {
            Ok(p) => {
                let covered = p.covered_count() as u64;
                let bound = m_star(k as u64).unwrap() * 50 + 3 * k as u64;
                t.check(p.len() == k && covered <= bound, || format!("k={k}: covered {covered} > {bound}"));
            }
            Err(e) => t.check(false, || format!("k={k}: {e}")),
        }
    }
}

/// Covered squares by testing every square against every queen.
fn covered_by_scan(p: &Placement) -> usize {
    p.dim()
        .squares()
        .filter(|s| {
            p.queens().iter().any(|q| {
                q.x == s.x || q.y == s.y || q.x as i32 - q.y as i32 == s.x as i32 - s.y as i32 || q.x + q.y == s.x + s.y
            })
        })
        .count()
}

/// Seeded lower-bound certificates for random placements.
pub fn certificate_samples(seed: u64, samples: usize) -> Vec<(Placement, Result<bool>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let p = random_placement(&mut rng, 12, 12);
            let ok = lower_bound_certificate(&p).map(|c| c.is_sound());
            (p, ok)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma3".parse::<Suite>().is_err());
    }

    #[test]
    fn brute_oracles_agree_on_a_small_case() {
        let q = [Square::new(1, 1), Square::new(2, 2), Square::new(3, 1)];
        // (1,1),(2,2) share x-y = 0; (2,2),(3,1) share x+y = 4.
        assert_eq!(brute_matching(&q), 2);
        assert_eq!(brute_cover(&q), 2);
    }

    #[test]
    fn small_konig_run_passes() {
        let mut t = Tally::new();
        konig(&mut t, &mut ChaCha8Rng::seed_from_u64(1), 200);
        assert!(t.failures.is_empty(), "{:?}", t.failures);
    }

    #[test]
    fn hexagon_points_small() {
        assert_eq!(hexagon_points(3, 5), 9);
        assert_eq!(hexagon_points(3, 3), 7);
        assert_eq!(hexagon_points(2, 1), 2);
    }
}
