//! Exact maximum-leaf search over induced subtrees of a fixed order.
//!
//! Every connected vertex set is generated once, from its smallest vertex
//! (the anchor), by the untried-set scheme used for polyomino counting.
//! Candidates touching two tree vertices would close a cycle and are
//! dropped. Branches are cut with an upper bound on reachable leaves that
//! comes from the degree-sum identity `Σ_internal (deg − 1) = n − 2`.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering::Relaxed};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::dual::P2Graph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Search nodes across all workers.
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Witnesses kept (the lexicographically smallest ones).
    pub witness_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            node_limit: None,
            time_limit: None,
            witness_cap: 16,
        }
    }
}

impl Budget {
    pub fn unlimited(witness_cap: usize) -> Self {
        Budget {
            witness_cap,
            ..Budget::default()
        }
    }
}

/// Result of a maximum-leaf search at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafRecord {
    pub n: usize,
    pub max_leaves: usize,
    /// Sorted tile-id lists, in lexicographic order.
    pub witnesses: Vec<Vec<usize>>,
    /// Set by callers that compared two patch levels and saw the same value.
    pub stable: bool,
}

/// Compact adjacency plus, per vertex, the largest number of pairwise
/// non-adjacent neighbours (the most tree neighbours it can ever have).
pub(crate) struct Csr {
    off: Vec<u32>,
    nbr: Vec<u32>,
    cap: Vec<u8>,
    cmax: usize,
}

impl Csr {
    pub(crate) fn new(g: &P2Graph) -> Csr {
        let mut off = vec![0u32];
        let mut nbr = Vec::new();
        let mut cap = Vec::with_capacity(g.len());
        for v in 0..g.len() {
            nbr.extend(g.neighbors(v).iter().map(|&u| u as u32));
            off.push(nbr.len() as u32);
            cap.push(neighbourhood_independence(g, v) as u8);
        }
        let cmax = cap.iter().copied().max().unwrap_or(0) as usize;
        Csr { off, nbr, cap, cmax }
    }

    fn len(&self) -> usize {
        self.cap.len()
    }

    #[inline]
    fn nbrs(&self, v: u32) -> &[u32] {
        &self.nbr[self.off[v as usize] as usize..self.off[v as usize + 1] as usize]
    }
}

/// Independence number of the neighbourhood of `v` (exhaustive for small
/// degrees, the degree itself otherwise).
fn neighbourhood_independence(g: &P2Graph, v: usize) -> usize {
    let nb = g.neighbors(v);
    if nb.len() > 16 {
        return nb.len();
    }
    let mut best = 0;
    for mask in 0u32..(1 << nb.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = (0..nb.len()).all(|i| {
            mask & (1 << i) == 0 || (i + 1..nb.len()).all(|j| mask & (1 << j) == 0 || !g.is_adjacent(nb[i], nb[j]))
        });
        if independent {
            best = size;
        }
    }
    best
}

/// Most leaves any tree of order `n` can have when no vertex can exceed
/// tree degree `cmax`.
pub(crate) fn degree_bound(n: usize, cmax: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let step = cmax.saturating_sub(1).max(1);
    n - (n - 2).div_ceil(step)
}

struct Shared {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    start: Instant,
    budget: Budget,
}

impl Shared {
    fn new(budget: Budget) -> Shared {
        Shared {
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            start: Instant::now(),
            budget,
        }
    }

    /// Flush a batch of locally counted nodes; false once over budget.
    fn charge(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Relaxed) + batch;
        let over = self.budget.node_limit.is_some_and(|l| total > l)
            || self.budget.time_limit.is_some_and(|t| self.start.elapsed() > t);
        if over {
            self.exhausted.store(true, Relaxed);
        }
        !self.exhausted.load(Relaxed)
    }
}

enum Goal<'a> {
    /// Find the maximum; `best` only grows, `done` is raised at `ceiling`.
    Improve {
        best: &'a AtomicUsize,
        ceiling: usize,
        done: &'a AtomicBool,
    },
    /// Keep the smallest `cap` trees with exactly `target` leaves.
    Collect {
        target: usize,
        cap: usize,
        found: BTreeSet<Vec<usize>>,
    },
}

const BATCH: u64 = 1 << 12;

struct Worker<'a> {
    g: &'a Csr,
    n: usize,
    anchor: u32,
    in_tree: Vec<bool>,
    seen: Vec<bool>,
    excluded: Vec<bool>,
    tcnt: Vec<u8>,
    tdeg: Vec<u8>,
    tree: Vec<u32>,
    parent: Vec<u32>,
    leaves: usize,
    pending: u64,
    shared: &'a Shared,
    goal: Goal<'a>,
}

impl<'a> Worker<'a> {
    fn new(g: &'a Csr, n: usize, shared: &'a Shared, goal: Goal<'a>) -> Self {
        let v = g.len();
        Worker {
            g,
            n,
            anchor: 0,
            in_tree: vec![false; v],
            seen: vec![false; v],
            excluded: vec![false; v],
            tcnt: vec![0; v],
            tdeg: vec![0; v],
            tree: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
            leaves: 0,
            pending: 0,
            shared,
            goal,
        }
    }

    fn stopped(&self) -> bool {
        self.shared.exhausted.load(Relaxed)
            || matches!(self.goal, Goal::Improve { done, .. } if done.load(Relaxed))
    }

    fn threshold(&self) -> usize {
        match &self.goal {
            Goal::Improve { best, .. } => best.load(Relaxed) + 1,
            Goal::Collect { target, .. } => *target,
        }
    }

    fn add(&mut self, v: u32, fresh: &mut Vec<u32>) {
        let vi = v as usize;
        if let Some(&p) = self.g.nbrs(v).iter().find(|&&u| self.in_tree[u as usize]) {
            self.tdeg[vi] = 1;
            self.tdeg[p as usize] += 1;
            if self.tree.len() == 1 {
                self.leaves = 2;
            } else {
                self.leaves += 1;
                if self.tdeg[p as usize] == 2 {
                    self.leaves -= 1;
                }
            }
            self.parent.push(p);
        } else {
            self.parent.push(u32::MAX);
        }
        self.in_tree[vi] = true;
        self.seen[vi] = true;
        self.tree.push(v);
        for &w in self.g.nbrs(v) {
            let wi = w as usize;
            self.tcnt[wi] += 1;
            if w > self.anchor && !self.seen[wi] {
                self.seen[wi] = true;
                fresh.push(w);
            }
        }
    }

    fn remove(&mut self, v: u32, fresh: &[u32], leaves: usize) {
        let vi = v as usize;
        for &w in self.g.nbrs(v) {
            self.tcnt[w as usize] -= 1;
        }
        for &w in fresh {
            self.seen[w as usize] = false;
        }
        self.tree.pop();
        let p = self.parent.pop().unwrap();
        if p != u32::MAX {
            self.tdeg[p as usize] -= 1;
        }
        self.tdeg[vi] = 0;
        self.in_tree[vi] = false;
        self.leaves = leaves;
    }

    /// Upper bound on the leaves of any completion of the current tree.
    fn bound(&self) -> usize {
        let n = self.n;
        let s = self.tree.len();
        let mut ub = if s >= 2 { self.leaves + (n - s) } else { n };
        let mut internal = 0;
        let mut excess = 0;
        for &u in &self.tree {
            let d = self.tdeg[u as usize] as usize;
            if d < 2 {
                continue;
            }
            internal += 1;
            let avail = self
                .g
                .nbrs(u)
                .iter()
                .filter(|&&w| {
                    let wi = w as usize;
                    w > self.anchor && !self.in_tree[wi] && !self.excluded[wi] && self.tcnt[wi] == 1
                })
                .count();
            let cap = (self.g.cap[u as usize] as usize).min(d + avail);
            excess += cap - 1;
        }
        let step = self.g.cmax.saturating_sub(1).max(1);
        let rest = (n - 2).saturating_sub(excess);
        let min_internal = internal + rest.div_ceil(step);
        ub = ub.min(n.saturating_sub(min_internal));
        ub
    }

    fn record(&mut self) {
        match &mut self.goal {
            Goal::Improve { best, ceiling, done } => {
                if self.leaves > best.load(Relaxed) {
                    best.fetch_max(self.leaves, Relaxed);
                    if self.leaves >= *ceiling {
                        done.store(true, Relaxed);
                    }
                }
            }
            Goal::Collect { target, cap, found } => {
                if self.leaves == *target {
                    let mut ids: Vec<usize> = self.tree.iter().map(|&v| v as usize).collect();
                    ids.sort_unstable();
                    found.insert(ids);
                    if found.len() > *cap {
                        found.pop_last();
                    }
                }
            }
        }
    }

    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending == BATCH {
            self.pending = 0;
            return self.shared.charge(BATCH);
        }
        true
    }

    fn flush(&mut self) {
        if self.pending > 0 {
            self.shared.charge(self.pending);
            self.pending = 0;
        }
    }

    fn run(&mut self, anchor: u32) {
        self.anchor = anchor;
        let mut fresh = Vec::new();
        self.add(anchor, &mut fresh);
        if self.n == 1 {
            self.record();
        } else if self.bound() >= self.threshold() {
            self.extend(fresh.clone());
        }
        self.remove(anchor, &fresh, 0);
        self.seen[anchor as usize] = false;
    }

    fn extend(&mut self, mut untried: Vec<u32>) {
        let mut popped = Vec::new();
        while let Some(v) = untried.pop() {
            if self.tcnt[v as usize] != 1 {
                continue;
            }
            if !self.tick() || self.stopped() {
                break;
            }
            let leaves = self.leaves;
            let mut fresh = Vec::new();
            self.add(v, &mut fresh);
            if self.tree.len() == self.n {
                self.record();
            } else {
                let next: Vec<u32> = untried
                    .iter()
                    .chain(&fresh)
                    .copied()
                    .filter(|&w| self.tcnt[w as usize] == 1)
                    .collect();
                if !next.is_empty() && self.bound() >= self.threshold() {
                    self.extend(next);
                }
            }
            self.remove(v, &fresh, leaves);
            self.excluded[v as usize] = true;
            popped.push(v);
        }
        for v in popped {
            self.excluded[v as usize] = false;
        }
    }
}

/// Maximum leaf count over induced subtrees of order `n`, with the
/// lexicographically smallest optimal trees as witnesses.
///
/// Results do not depend on the number of worker threads. When the budget
/// runs out, the best value and witnesses found so far come back inside
/// [`Error::BudgetExceeded`].
pub fn search_max_leaves(g: &P2Graph, n: usize, budget: Budget) -> Result<LeafRecord> {
    if n > g.len() {
        return Err(Error::OrderTooLarge { order: n, tiles: g.len() });
    }
    if n == 0 {
        return Ok(LeafRecord {
            n,
            max_leaves: 0,
            witnesses: if budget.witness_cap > 0 { vec![vec![]] } else { vec![] },
            stable: false,
        });
    }
    let csr = Csr::new(g);
    let shared = Shared::new(budget);
    let best = AtomicUsize::new(0);
    let done = AtomicBool::new(false);

    if n >= 2 {
        let ceiling = degree_bound(n, csr.cmax);
        (0..csr.len() as u32).into_par_iter().for_each_init(
            || {
                Worker::new(
                    &csr,
                    n,
                    &shared,
                    Goal::Improve {
                        best: &best,
                        ceiling,
                        done: &done,
                    },
                )
            },
            |w, a| {
                if !w.stopped() {
                    w.run(a);
                }
                w.flush();
            },
        );
        if best.load(Relaxed) == 0 && !shared.exhausted.load(Relaxed) {
            return Err(Error::NoSubtree(n));
        }
    }
    let max_leaves = best.load(Relaxed);

    let witnesses = collect_witnesses(&csr, n, max_leaves, &shared);
    let record = LeafRecord {
        n,
        max_leaves,
        witnesses,
        stable: false,
    };
    if shared.exhausted.load(Relaxed) {
        Err(Error::BudgetExceeded {
            partial: Box::new(record),
        })
    } else {
        Ok(record)
    }
}

/// Smallest `cap` trees of order `n` with `target` leaves, anchors taken
/// in ascending order so earlier anchors' trees come first.
fn collect_witnesses(csr: &Csr, n: usize, target: usize, shared: &Shared) -> Vec<Vec<usize>> {
    let cap = shared.budget.witness_cap;
    let mut out: Vec<Vec<usize>> = Vec::new();
    if cap == 0 {
        return out;
    }
    let chunk = (rayon::current_num_threads() * 4).max(16);
    let anchors: Vec<u32> = (0..csr.len() as u32).collect();
    for block in anchors.chunks(chunk) {
        if out.len() >= cap || shared.exhausted.load(Relaxed) {
            break;
        }
        let found: Vec<BTreeSet<Vec<usize>>> = block
            .par_iter()
            .map_init(
                || {
                    Worker::new(
                        csr,
                        n,
                        shared,
                        Goal::Collect {
                            target,
                            cap,
                            found: BTreeSet::new(),
                        },
                    )
                },
                |w, &a| {
                    w.run(a);
                    w.flush();
                    match &mut w.goal {
                        Goal::Collect { found, .. } => std::mem::take(found),
                        Goal::Improve { .. } => unreachable!(),
                    }
                },
            )
            .collect();
        for set in found {
            out.extend(set);
        }
    }
    out.truncate(cap);
    out
}

/// Maximum leaf count over every order up to `max_n` by exhaustive
/// enumeration of induced subtrees. Exponential; for tests and small
/// graphs.
pub fn brute_force_leaf_table(g: &P2Graph, max_n: usize) -> Vec<Option<usize>> {
    let empty = vec![None; max_n + 1];
    if max_n == 0 {
        return empty;
    }
    (0..g.len())
        .into_par_iter()
        .fold(
            || (vec![false; g.len()], empty.clone()),
            |(mut in_set, mut table), anchor| {
                let mut set = vec![anchor];
                in_set[anchor] = true;
                let ext: Vec<usize> = g.neighbors(anchor).iter().copied().filter(|&u| u > anchor).collect();
                esu(g, anchor, &mut set, &mut in_set, ext, max_n, &mut table);
                in_set[anchor] = false;
                (in_set, table)
            },
        )
        .map(|(_, t)| t)
        .reduce(|| empty.clone(), |a, b| a.iter().zip(&b).map(|(&x, &y)| x.max(y)).collect())
}

// Extension-set enumeration of connected induced subgraphs containing the
// anchor as smallest vertex, cut as soon as the set stops being a tree.
fn esu(
    g: &P2Graph,
    anchor: usize,
    set: &mut Vec<usize>,
    in_set: &mut [bool],
    mut ext: Vec<usize>,
    max_n: usize,
    table: &mut [Option<usize>],
) {
    let leaves = if set.len() < 2 {
        0
    } else {
        set.iter()
            .filter(|&&t| g.neighbors(t).iter().filter(|&&u| in_set[u]).count() == 1)
            .count()
    };
    let k = set.len();
    table[k] = Some(table[k].map_or(leaves, |l| l.max(leaves)));
    if k == max_n {
        return;
    }
    while let Some(w) = ext.pop() {
        let tree_nbrs = g.neighbors(w).iter().filter(|&&u| in_set[u]).count();
        if tree_nbrs != 1 {
            continue;
        }
        let mut next = ext.clone();
        for &u in g.neighbors(w) {
            if u > anchor && !in_closed_neighbourhood(g, set, u) {
                next.push(u);
            }
        }
        set.push(w);
        in_set[w] = true;
        esu(g, anchor, set, in_set, next, max_n, table);
        set.pop();
        in_set[w] = false;
    }
}

/// Vertices in the closed neighbourhood of the set were offered already or
/// are members, so they are not offered again.
fn in_closed_neighbourhood(g: &P2Graph, set: &[usize], u: usize) -> bool {
    set.iter().any(|&s| s == u || g.is_adjacent(s, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(w: usize, h: usize) -> P2Graph {
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    edges.push((v, v + 1));
                }
                if y + 1 < h {
                    edges.push((v, v + w));
                }
            }
        }
        P2Graph::from_edges(w * h, &edges, &[]).unwrap()
    }

    #[test]
    fn trivial_orders() {
        let g = grid(3, 3);
        let r = search_max_leaves(&g, 2, Budget::unlimited(100)).unwrap();
        assert_eq!(r.max_leaves, 2);
        assert_eq!(r.witnesses.len(), g.edge_count());
        let r = search_max_leaves(&g, 1, Budget::unlimited(3)).unwrap();
        assert_eq!((r.max_leaves, r.witnesses), (0, vec![vec![0], vec![1], vec![2]]));
        assert!(matches!(search_max_leaves(&g, 10, Budget::default()), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn grid_matches_brute_force() {
        let g = grid(5, 4);
        let table = brute_force_leaf_table(&g, 12);
        for n in 2..=12 {
            let r = search_max_leaves(&g, n, Budget::unlimited(0)).unwrap();
            assert_eq!(Some(r.max_leaves), table[n], "n = {n}");
        }
    }

    #[test]
    fn witnesses_are_sorted_and_optimal() {
        let g = grid(4, 4);
        let r = search_max_leaves(&g, 7, Budget::unlimited(50)).unwrap();
        assert!(r.witnesses.windows(2).all(|w| w[0] < w[1]));
        for w in &r.witnesses {
            let deg = |t: usize| g.neighbors(t).iter().filter(|u| w.contains(u)).count();
            let edges: usize = w.iter().map(|&t| deg(t)).sum::<usize>() / 2;
            assert_eq!((w.len(), edges), (7, 6));
            assert_eq!(w.iter().filter(|&&t| deg(t) == 1).count(), r.max_leaves);
        }
    }

    #[test]
    fn node_budget_reports_partial() {
        let g = grid(6, 6);
        let b = Budget {
            node_limit: Some(10),
            ..Budget::default()
        };
        assert!(matches!(search_max_leaves(&g, 14, b), Err(Error::BudgetExceeded { .. })));
    }
}
