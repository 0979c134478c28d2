//! Maximum bipartite matching (Hopcroft-Karp) and König vertex covers.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;
const INF: usize = usize::MAX;

/// A bipartite graph on `0..left` and `0..right`.
#[derive(Debug, Clone, Default)]
pub struct BipartiteGraph {
    adj: Vec<Vec<usize>>,
    right: usize,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph { adj: vec![Vec::new(); left], right }
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(r < self.right, "right vertex {r} out of range");
        if !self.adj[l].contains(&r) {
            self.adj[l].push(r);
        }
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pair_left: Vec<Option<usize>>,
    pub pair_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pair_left.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Matched pairs `(left, right)` in increasing left order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pair_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }
}

/// Maximum matching in `O(E sqrt(V))`.
///
/// Neighbours are scanned in insertion order, so the result is deterministic.
pub fn hopcroft_karp(g: &BipartiteGraph) -> Matching {
    let left = g.left_len();
    let mut pair_l = vec![NIL; left];
    let mut pair_r = vec![NIL; g.right_len()];
    let mut dist = vec![INF; left];

    loop {
        let mut queue = VecDeque::new();
        for u in 0..left {
            if pair_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let w = pair_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == INF {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..left {
            if pair_l[u] == NIL {
                augment(g, u, &mut pair_l, &mut pair_r, &mut dist);
            }
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != NIL).then_some(x)).collect();
    Matching { pair_left: wrap(pair_l), pair_right: wrap(pair_r) }
}

fn augment(
    g: &BipartiteGraph,
    u: usize,
    pair_l: &mut [usize],
    pair_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in g.neighbors(u) {
        let w = pair_r[v];
        if w == NIL || (dist[w] == dist[u].wrapping_add(1) && augment(g, w, pair_l, pair_r, dist)) {
            pair_l[u] = v;
            pair_r[v] = u;
            return true;
        }
    }
    dist[u] = INF;
    false
}

/// Minimum vertex cover from a maximum matching.
///
/// Let `Z` be everything reachable from unmatched left vertices along
/// alternating paths. The cover is the left side outside `Z` plus the right
/// side inside `Z`; its size equals the matching size.
pub fn konig_cover(g: &BipartiteGraph, m: &Matching) -> (Vec<usize>, Vec<usize>) {
    let left = g.left_len();
    let mut seen_l = vec![false; left];
    let mut seen_r = vec![false; g.right_len()];
    let mut stack: Vec<usize> = (0..left).filter(|&u| m.pair_left[u].is_none()).collect();
    for &u in &stack {
        seen_l[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if m.pair_left[u] == Some(v) || seen_r[v] {
                continue;
            }
            seen_r[v] = true;
            if let Some(w) = m.pair_right[v] {
                if !seen_l[w] {
                    seen_l[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let cover_l = (0..left).filter(|&u| !seen_l[u]).collect();
    let cover_r = (0..g.right_len()).filter(|&v| seen_r[v]).collect();
    (cover_l, cover_r)
}
