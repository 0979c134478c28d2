//! Closed-form bound functions, all in exact integer arithmetic.
//!
//! * [`g_of`] is the number of queens the constructions fit while spending a
//!   line budget of `m` (rows + columns + diagonals).
//! * [`m_star`] inverts it: the smallest budget that fits `k` queens.
//! * [`f_bound`] and [`delta`] bound the triple intersections of a selection by
//!   counting how many points each ring of the row/column grid can contribute.
//! * [`f_of`] maximizes that bound over all splits of a budget; [`f_closed`] is
//!   its closed form by residue mod 12.

use serde::Serialize;

use crate::error::{Error, Result};

/// Queens fitted by the constructions with a budget of `m` lines.
///
/// `floor(m^2 / 12) + 1` when `m` is 3, 6 or 9 mod 12, or `m == 10`;
/// `floor(m^2 / 12)` otherwise.
pub fn g_of(m: u64) -> u64 {
    let base = m * m / 12;
    if matches!(m % 12, 3 | 6 | 9) || m == 10 {
        base + 1
    } else {
        base
    }
}

/// The smallest `m` with `g_of(m) >= k`.
pub fn m_star(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("m_star needs k >= 1"));
    }
    // g_of(m) >= m^2/12 - 1, so the answer is below sqrt(12 (k + 1)) + 2.
    let mut m = 1;
    while g_of(m) < k {
        m += 1;
    }
    Ok(m)
}

/// Squares of an `a x a` corner block whose positive diagonal is one of the
/// `c` middle diagonals.
///
/// The `2a - 1 - c` dropped diagonals form two corner triangles of sides
/// `floor((2a - c - 1) / 2)` and `floor((2a - c) / 2)`.
pub fn hexagon_block_count(a: u64, c: u64) -> Result<u64> {
    if a == 0 || c == 0 || c > 2 * a - 1 {
        return Err(Error::domain(format!(
            "hexagon block needs a >= 1 and 1 <= c <= 2a - 1 (got a = {a}, c = {c})"
        )));
    }
    let t1 = (2 * a - c - 1) / 2;
    let t2 = (2 * a - c) / 2;
    Ok(a * a - t1 * (t1 + 1) / 2 - t2 * (t2 + 1) / 2)
}

/// Queens in a regular hexagon of side `m`: `3m^2 - 3m + 1`.
pub fn regular_hexagon_count(side: u64) -> Result<u64> {
    if side == 0 {
        return Err(Error::domain("hexagon side must be at least 1"));
    }
    Ok(3 * side * side - 3 * side + 1)
}

/// Upper bound on triple intersections for `a` columns, `b` rows and `c`
/// diagonals of a single orientation.
///
/// Each L-shaped shell of the grid meets a diagonal at most once, and shell
/// `l` holds `a + b + 1 - 2l` points.
pub fn corner_bound(a: u64, b: u64, c: u64) -> u64 {
    (1..=a.min(b)).map(|l| c.min(a + b + 1 - 2 * l)).sum()
}

/// `floor((m^2 + 3) / 12)`, the value reached by the best corner selections.
pub fn corner_optimum(m: u64) -> u64 {
    (m * m + 3) / 12
}

/// Ring bound: `sum_{l=1}^{floor((r+2)/4)} min(2c, 2r + 4 - 8l)` where `r` is
/// the number of rows plus columns.
pub fn f_bound(rc_total: u64, c: u64) -> u64 {
    let rings = (rc_total + 2) / 4;
    // Terms shrink with l; the first `full` of them are capped at 2c.
    let full = if rc_total + 2 >= c { ((rc_total + 2 - c) / 4).min(rings) } else { 0 };
    2 * c * full + (rings - full) * (2 * rc_total + 4) - 4 * (rings * (rings + 1) - full * (full + 1))
}

/// 1 when `rc_total` is 2 mod 4 (a lone centre point survives), else 0.
pub fn delta(rc_total: u64) -> u64 {
    u64::from(rc_total % 4 == 2)
}

/// Maximum of `f_bound(a, c) + delta(a)` over splits `a + c = budget`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FMax {
    pub value: u64,
    /// Rows plus columns of the smallest maximizing split.
    pub rc_total: u64,
    pub diags: u64,
}

/// Maximizes the ring bound over every split with `a >= 2` and `c >= 0`.
///
/// Ties go to the smallest `a`.
pub fn f_of(budget: u64) -> Result<FMax> {
    if budget < 2 {
        return Err(Error::domain("F(M) needs M >= 2"));
    }
    let mut best: Option<FMax> = None;
    for a in 2..=budget {
        let c = budget - a;
        let value = f_bound(a, c) + delta(a);
        if best.is_none_or(|b| value > b.value) {
            best = Some(FMax { value, rc_total: a, diags: c });
        }
    }
    Ok(best.expect("at least one split"))
}

/// Every split `(a, c)` that attains [`f_of`].
pub fn f_maximizers(budget: u64) -> Result<Vec<(u64, u64)>> {
    let best = f_of(budget)?.value;
    Ok((2..=budget)
        .filter(|&a| f_bound(a, budget - a) + delta(a) == best)
        .map(|a| (a, budget - a))
        .collect())
}

/// Closed form of [`f_of`].
pub fn f_closed(budget: u64) -> Result<u64> {
    if budget < 2 {
        return Err(Error::domain("F(M) needs M >= 2"));
    }
    let base = budget * budget / 12;
    Ok(match budget % 12 {
        0 | 1 | 5 | 7 | 11 => base,
        _ => base + 1,
    })
}

/// Where the diagonal count of an optimal split is expected to sit:
/// `floor(M/3)`, plus one when `M` is 8 or 10 mod 12.
pub fn expected_optimal_diags(budget: u64) -> u64 {
    budget / 3 + u64::from(matches!(budget % 12, 8 | 10))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Closed,
    Maximized,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Closed => "closed",
            Provenance::Maximized => "maximized",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub m: u64,
    pub g: u64,
    pub f: u64,
    /// The values of `k` whose `m_star` is `m`, when there are any.
    pub k_span: Option<(u64, u64)>,
    pub source: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    /// Rows for `2 <= m <= max_m`. With [`Provenance::Maximized`] the F column
    /// comes from [`f_of`] and is checked against the closed form.
    pub fn build(max_m: u64, source: Provenance) -> Result<Self> {
        let mut rows = Vec::new();
        for m in 2..=max_m {
            let closed = f_closed(m)?;
            let f = match source {
                Provenance::Closed => closed,
                Provenance::Maximized => {
                    let f = f_of(m)?.value;
                    if f != closed {
                        return Err(Error::domain(format!(
                            "F({m}) maximized to {f} but the closed form gives {closed}"
                        )));
                    }
                    f
                }
            };
            let (g, prev) = (g_of(m), g_of(m - 1));
            let k_span = (g > prev).then_some((prev + 1, g));
            rows.push(BoundRow { m, g, f, k_span, source });
        }
        Ok(BoundTable { rows })
    }

    /// CSV with header `m,G,F,source`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,G,F,source\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.m, r.g, r.f, r.source.as_str()));
        }
        out
    }
}

/// CSV with header `k,m_star` for `1 <= k <= max_k`.
pub fn m_star_csv(max_k: u64) -> String {
    let mut out = String::from("k,m_star\n");
    let mut m = 1;
    for k in 1..=max_k {
        while g_of(m) < k {
            m += 1;
        }
        out.push_str(&format!("{k},{m}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_bound_matches_term_sum() {
        for r in 0..=200u64 {
            for c in 0..=200u64 {
                let terms: u64 = (1..=(r + 2) / 4).map(|l| (2 * c).min(2 * r + 4 - 8 * l)).sum();
                assert_eq!(f_bound(r, c), terms, "r={r} c={c}");
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_of(3), 1);
        assert_eq!(g_of(10), 9);
        assert_eq!(g_of(18), 28);
        assert_eq!((g_of(1), g_of(2)), (0, 0));
    }

    #[test]
    fn m_star_examples() {
        assert_eq!(m_star(1), Ok(3));
        assert_eq!(m_star(9), Ok(10));
        assert_eq!(m_star(28), Ok(18));
        assert!(m_star(0).is_err());
    }

    #[test]
    fn m_star_is_minimal() {
        for k in 1..=500 {
            let m = m_star(k).unwrap();
            assert!(g_of(m) >= k);
            assert!(g_of(m - 1) < k);
        }
    }

    #[test]
    fn hexagon_examples() {
        assert_eq!(hexagon_block_count(3, 3), Ok(7));
        assert_eq!(hexagon_block_count(2, 2), Ok(3));
        assert_eq!(hexagon_block_count(3, 4), Ok(8));
        assert!(hexagon_block_count(3, 6).is_err());
        assert!(hexagon_block_count(3, 0).is_err());
    }

    /// Counts block squares whose diagonal falls in the centred window.
    fn hexagon_oracle(a: i64, c: i64) -> u64 {
        let lo = -((c - 1) / 2);
        let hi = c / 2;
        let mut count = 0;
        for u in 1..=a {
            for v in 1..=a {
                if (lo..=hi).contains(&(u - v)) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn hexagon_matches_enumeration_and_bound() {
        for a in 1..=30u64 {
            for c in 1..2 * a {
                let got = hexagon_block_count(a, c).unwrap();
                assert_eq!(got, hexagon_oracle(a as i64, c as i64), "a={a} c={c}");
                assert!(got <= corner_optimum(2 * a + c));
            }
        }
    }

    #[test]
    fn hexagon_identity_for_balanced_triples() {
        for a in 1..=100u64 {
            for c in a.saturating_sub(1).max(1)..=(a + 1).min(2 * a - 1) {
                assert_eq!(hexagon_block_count(a, c).unwrap(), corner_optimum(2 * a + c));
            }
        }
    }

    #[test]
    fn regular_hexagon_examples() {
        assert_eq!(regular_hexagon_count(1), Ok(1));
        assert_eq!(regular_hexagon_count(3), Ok(19));
        assert_eq!(regular_hexagon_count(4), Ok(37));
        for m in 1..=40 {
            assert_eq!(regular_hexagon_count(m), hexagon_block_count(2 * m - 1, 2 * m - 1));
        }
    }

    #[test]
    fn corner_bound_examples() {
        assert_eq!(corner_bound(2, 2, 2), 3);
        assert_eq!(corner_bound(3, 3, 3), 7);
        assert_eq!(corner_bound(1, 1, 4), 1);
        assert_eq!(corner_bound(0, 5, 5), 0);
    }

    #[test]
    fn corner_bound_maximum_over_splits() {
        for m in 3..=200u64 {
            let best = (0..=m)
                .flat_map(|a| (0..=m - a).map(move |b| corner_bound(a, b, m - a - b)))
                .max()
                .unwrap();
            assert_eq!(best, corner_optimum(m), "m={m}");
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!((f_bound(10, 4), delta(10)), (16, 1));
        assert_eq!((f_bound(8, 4), delta(8)), (12, 0));
        assert_eq!(f_bound(2, 7), 0);
        assert_eq!(delta(2), 1);
    }

    #[test]
    fn big_f_examples() {
        assert_eq!(f_of(14).unwrap().value, 17);
        assert_eq!(f_of(14).unwrap(), FMax { value: 17, rc_total: 10, diags: 4 });
        assert_eq!(f_closed(14), Ok(17));
        assert_eq!(f_closed(12), Ok(12));
        assert_eq!(f_closed(10), Ok(9));
        assert_eq!(f_of(10).unwrap().value, 9);
        assert!(f_of(1).is_err());
        assert!(f_closed(0).is_err());
    }

    #[test]
    fn f_of_matches_closed_form() {
        for m in 2..=2000 {
            assert_eq!(f_of(m).unwrap().value, f_closed(m).unwrap(), "M={m}");
        }
    }

    #[test]
    fn f_optimizer_location() {
        for m in 3..=500u64 {
            let maximizers = f_maximizers(m).unwrap();
            let expected = expected_optimal_diags(m);
            assert!(maximizers.iter().any(|&(_, c)| c == expected), "M={m}: {maximizers:?}");
            if matches!(m % 12, 2 | 4 | 8 | 10) {
                assert_eq!(maximizers.len(), 1, "M={m} should have a unique optimum");
            }
            assert_eq!(f_of(m).unwrap().rc_total, maximizers[0].0);
        }
    }

    #[test]
    fn g_below_f() {
        for m in 2..=1000u64 {
            let g = g_of(m);
            let f = f_closed(m).unwrap();
            assert!(g <= f);
            let extra_slot = matches!(m % 12, 2 | 4 | 8 | 10) && m != 10;
            assert_eq!(g < f, extra_slot, "m={m}");
        }
    }

    #[test]
    fn g_and_f_nondecreasing() {
        for m in 2..=1000u64 {
            assert!(g_of(m + 1) >= g_of(m));
            assert!(f_closed(m + 1).unwrap() >= f_closed(m).unwrap());
        }
    }

    #[test]
    fn table_csv() {
        let t = BoundTable::build(20, Provenance::Maximized).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("m,G,F,source\n2,0,1,maximized\n"));
        assert!(csv.contains("\n18,28,28,maximized\n"));
        let row = t.rows.iter().find(|r| r.m == 18).unwrap();
        assert_eq!(row.k_span, Some((25, 28)));
        assert!(m_star_csv(9).ends_with("9,10\n"));
    }
}
