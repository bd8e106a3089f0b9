//! Growing patches around a caterpillar and extending caterpillars one
//! prime at a time.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering::Relaxed};

use rayon::prelude::*;

use crate::caterpillar::{
    decompose, forbidden_patterns, CaterpillarChain, ChainReport, PrimeCaterpillar, Scene, Violation,
};
use crate::flis::{Budget, InducedSubtree};
use crate::geometry::{Isometry, Patch};
use crate::ring::Cyclo10;
use crate::{Error, Result};

/// Old coordinates times `φ^steps` are the new ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnchorMap {
    pub steps: u32,
}

impl AnchorMap {
    pub fn map(&self, z: Cyclo10) -> Cyclo10 {
        z * Cyclo10::phi_pow(self.steps as i32)
    }
}

/// A copy of one patch inside another: `z ↦ isometry(z) + shift` sends
/// every tile of the first onto a tile of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub isometry: Isometry,
    pub shift: Cyclo10,
    /// New id of each old tile.
    pub tile_map: Vec<usize>,
}

impl Embedding {
    pub fn map(&self, z: Cyclo10) -> Cyclo10 {
        self.isometry.apply(z) + self.shift
    }
}

/// Find `small` verbatim inside `large`, trying the 20 isometries and
/// every placement of the first tile. Isometries are tried in
/// [`Isometry::all`] order, placements by tile id.
pub fn find_embedding(small: &Patch, large: &Patch) -> Option<Embedding> {
    let first = small.tiles.first()?;
    let index = large.index_by_axis();
    for g in Isometry::all() {
        let (tip, far) = (g.apply(first.anchor), g.apply(first.far()));
        for cand in large.tiles.iter().filter(|t| t.kind == first.kind) {
            let shift = cand.anchor - tip;
            if cand.far() != far + shift {
                continue;
            }
            let tile_map: Option<Vec<usize>> = small
                .tiles
                .iter()
                .map(|t| index.get(&(t.kind, g.apply(t.anchor) + shift, g.apply(t.far()) + shift)).copied())
                .collect();
            if let Some(tile_map) = tile_map {
                return Some(Embedding {
                    isometry: g,
                    shift,
                    tile_map,
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct Grown {
    pub patch: Patch,
    pub anchor: AnchorMap,
    /// The old patch found again, unscaled, inside the grown one.
    pub embedding: Option<Embedding>,
    /// Tiles of the caterpillar in the grown patch, through `embedding`.
    pub tiles: Option<Vec<usize>>,
}

/// Inflate `steps` times. Coordinates follow `anchor`; when the old patch
/// reappears verbatim in the new one (as it does for sun and star patches
/// after two or four steps), the caterpillar is carried over as well.
pub fn grow_context(p: &Patch, c: &InducedSubtree, steps: u32) -> Result<Grown> {
    if steps == 0 {
        return Err(Error::Structural("grow_context needs at least one step".into()));
    }
    let mut q = p.inflate()?;
    for _ in 1..steps {
        q = q.inflate()?;
    }
    let embedding = find_embedding(p, &q.merged());
    let tiles = embedding
        .as_ref()
        .map(|e| c.tiles().iter().map(|&t| e.tile_map[t]).collect());
    Ok(Grown {
        patch: q,
        anchor: AnchorMap { steps },
        embedding,
        tiles,
    })
}

/// Every prime caterpillar of a scene whose own star lies in the patch,
/// indexed by leaf.
#[derive(Clone, Debug)]
pub struct PrimeIndex {
    pub primes: Vec<PrimeCaterpillar>,
    by_leaf: HashMap<usize, Vec<usize>>,
    by_tiles: HashMap<Vec<usize>, usize>,
}

impl PrimeIndex {
    pub fn new(scene: &Scene, budget: Budget) -> Result<PrimeIndex> {
        let trees = crate::caterpillar::find_primes(scene, budget)?;
        let primes: Vec<PrimeCaterpillar> = trees
            .into_par_iter()
            .filter_map(|t| PrimeCaterpillar::new(scene, t).ok())
            .collect();
        let mut by_leaf: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut by_tiles = HashMap::new();
        for (i, p) in primes.iter().enumerate() {
            for l in p.tree.leaves() {
                by_leaf.entry(l).or_default().push(i);
            }
            by_tiles.insert(p.tree.tiles().to_vec(), i);
        }
        Ok(PrimeIndex {
            primes,
            by_leaf,
            by_tiles,
        })
    }

    pub fn position(&self, p: &PrimeCaterpillar) -> Option<usize> {
        self.by_tiles.get(p.tree.tiles()).copied()
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// Primes added before and after the seed.
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub met: bool,
    pub chain: CaterpillarChain,
    /// Search nodes visited.
    pub nodes: u64,
}

/// A chain as prime indices with reading direction.
#[derive(Clone, Debug)]
struct Walk {
    items: VecDeque<(usize, bool)>,
    tiles: HashSet<usize>,
    left: usize,
    right: usize,
}

struct Extender<'a> {
    scene: &'a Scene,
    index: &'a PrimeIndex,
    target: usize,
    nodes: &'a AtomicU64,
    limit: u64,
    done: &'a AtomicBool,
    /// Side of each prime read forwards: `Some(true)` on the right.
    right_fwd: Vec<Option<bool>>,
}

fn oriented(p: &PrimeCaterpillar, reversed: bool) -> ([Option<usize>; 2], usize, usize) {
    let [a, b] = p.flanking;
    let (s, e) = (p.chain[0], p.chain[7]);
    if reversed {
        ([b, a], e, s)
    } else {
        ([a, b], s, e)
    }
}

impl Extender<'_> {
    fn side(&self, i: usize, reversed: bool) -> Option<bool> {
        self.right_fwd[i].map(|r| r != reversed)
    }

    /// Primes that can be grafted after `(i, rev)` (or before it when
    /// `front`), returned with their reading direction along the chain.
    fn candidates(&self, walk: &Walk, front: bool) -> Vec<(usize, bool)> {
        let g = &self.scene.graph;
        let (i, rev) = if front { walk.items[0] } else { *walk.items.back().unwrap() };
        let p = &self.index.primes[i];
        let (flanks, first, last) = oriented(p, rev);
        let (end, toward) = if front { (first, flanks[0]) } else { (last, flanks[1]) };
        let Some(toward) = toward else { return Vec::new() };
        let Some(my_side) = self.side(i, rev) else { return Vec::new() };
        let mut out = Vec::new();
        for l in p.tree.leaves().into_iter().filter(|&l| g.is_adjacent(l, end)) {
            for &j in self.index.by_leaf.get(&l).map_or(&[][..], |v| v) {
                let q = &self.index.primes[j];
                if j == i || q.own_star != toward {
                    continue;
                }
                // read q away from the junction
                let q_rev = if front {
                    g.is_adjacent(q.chain[0], l)
                } else {
                    g.is_adjacent(q.chain[7], l)
                };
                let (qf, qa, qb) = oriented(q, q_rev);
                let near_end = if front { qb } else { qa };
                if !g.is_adjacent(near_end, l) {
                    continue;
                }
                let back = if front { qf[1] } else { qf[0] };
                if back != Some(p.own_star) || self.side(j, q_rev) != Some(!my_side) {
                    continue;
                }
                let fits = q.tree.tiles().iter().all(|&v| {
                    v == l || (!walk.tiles.contains(&v) && g.neighbors(v).iter().all(|&u| u == l || !walk.tiles.contains(&u)))
                });
                if fits {
                    out.push((j, q_rev));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn score(w: &Walk) -> (usize, usize) {
        (w.left.min(w.right), w.left + w.right)
    }

    fn dfs(&self, walk: &mut Walk, front: bool, best: &mut Option<Walk>) -> bool {
        if self.done.load(Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Relaxed) >= self.limit {
            return false;
        }
        if best.as_ref().is_none_or(|b| Self::score(walk) > Self::score(b)) {
            *best = Some(walk.clone());
        }
        if walk.left >= self.target && walk.right >= self.target {
            self.done.store(true, Relaxed);
            return true;
        }
        if !front && walk.right < self.target {
            for (j, rev) in self.candidates(walk, false) {
                let added = self.push(walk, j, rev, false);
                let hit = self.dfs(walk, false, best);
                self.pop(walk, &added, false);
                if hit {
                    return true;
                }
            }
        }
        if !front {
            return self.dfs_left(walk, best);
        }
        if walk.left < self.target {
            for (j, rev) in self.candidates(walk, true) {
                let added = self.push(walk, j, rev, true);
                let hit = self.dfs(walk, true, best);
                self.pop(walk, &added, true);
                if hit {
                    return true;
                }
            }
        }
        false
    }

    fn dfs_left(&self, walk: &mut Walk, best: &mut Option<Walk>) -> bool {
        if walk.left >= self.target {
            return false;
        }
        for (j, rev) in self.candidates(walk, true) {
            let added = self.push(walk, j, rev, true);
            let hit = self.dfs(walk, true, best);
            self.pop(walk, &added, true);
            if hit {
                return true;
            }
        }
        false
    }

    fn push(&self, walk: &mut Walk, j: usize, rev: bool, front: bool) -> Vec<usize> {
        let added: Vec<usize> = self.index.primes[j]
            .tree
            .tiles()
            .iter()
            .copied()
            .filter(|v| !walk.tiles.contains(v))
            .collect();
        walk.tiles.extend(&added);
        if front {
            walk.items.push_front((j, rev));
            walk.left += 1;
        } else {
            walk.items.push_back((j, rev));
            walk.right += 1;
        }
        added
    }

    fn pop(&self, walk: &mut Walk, added: &[usize], front: bool) {
        for v in added {
            walk.tiles.remove(v);
        }
        if front {
            walk.items.pop_front();
            walk.left -= 1;
        } else {
            walk.items.pop_back();
            walk.right -= 1;
        }
    }
}

fn prime_sides(scene: &Scene, index: &PrimeIndex) -> Vec<Option<bool>> {
    index
        .primes
        .par_iter()
        .map(|p| match p.flanking {
            [Some(a), Some(b)] => crate::caterpillar::turn_at(scene, a, p.own_star, b, p.inner_core())
                .ok()
                .map(|r| r.0),
            _ => None,
        })
        .collect()
}

fn seed_walk(index: &PrimeIndex, seed: &CaterpillarChain) -> Result<Walk> {
    if seed.primes.is_empty() || seed.partial.is_some() || seed.appendix.is_some() {
        return Err(Error::ChainRejected("the seed must consist of whole grafted primes".into()));
    }
    let mut items = VecDeque::new();
    for (p, &rev) in seed.primes.iter().zip(&seed.reversed) {
        let i = index
            .position(p)
            .ok_or_else(|| Error::ChainRejected("seed prime missing from the index".into()))?;
        items.push_back((i, rev));
    }
    Ok(Walk {
        tiles: seed.tree.tiles().iter().copied().collect(),
        items,
        left: 0,
        right: 0,
    })
}

fn walk_chain(scene: &Scene, w: &Walk) -> Result<CaterpillarChain> {
    let mut tiles: Vec<usize> = w.tiles.iter().copied().collect();
    tiles.sort_unstable();
    let tree = InducedSubtree::new(&scene.graph, tiles)?;
    decompose(scene, &tree)
}

/// Every chain obtained by grafting exactly `depth` primes after the seed,
/// under the same rules as [`extend_chain`]. Ordered by the prime indices
/// chosen at each step.
pub fn right_extensions(
    scene: &Scene,
    index: &PrimeIndex,
    seed: &CaterpillarChain,
    depth: usize,
) -> Result<Vec<CaterpillarChain>> {
    let walk = seed_walk(index, seed)?;
    let nodes = AtomicU64::new(0);
    let done = AtomicBool::new(false);
    let ext = Extender {
        scene,
        index,
        target: depth,
        nodes: &nodes,
        limit: u64::MAX,
        done: &done,
        right_fwd: prime_sides(scene, index),
    };
    let mut found = Vec::new();
    let mut stack = vec![walk];
    while let Some(mut w) = stack.pop() {
        if w.right == depth {
            found.push(w);
            continue;
        }
        let mut next = ext.candidates(&w, false);
        next.reverse();
        for (j, rev) in next {
            let mut v = w.clone();
            ext.push(&mut v, j, rev, false);
            stack.push(v);
        }
        w.items.clear();
    }
    found.iter().map(|w| walk_chain(scene, w)).collect()
}

/// Extend a chain of grafted primes one prime at a time on both sides,
/// keeping each step a graft that stays fully leafed, with alternating
/// sides and matching flanking stars. Stops at `target` primes per side.
pub fn extend_chain(
    scene: &Scene,
    index: &PrimeIndex,
    seed: &CaterpillarChain,
    target: usize,
    budget: Budget,
) -> Result<ExtensionReport> {
    let bad: Vec<String> = forbidden_patterns(scene, seed)
        .into_iter()
        .filter(|v| matches!(v, Violation::TwoFours { .. }))
        .map(|v| v.to_string())
        .collect();
    if !bad.is_empty() {
        return Err(Error::ChainRejected(format!("seed contains {}", bad.join(" "))));
    }
    let walk = seed_walk(index, seed)?;
    let nodes = AtomicU64::new(0);
    let done = AtomicBool::new(false);
    let ext = Extender {
        scene,
        index,
        target,
        nodes: &nodes,
        limit: budget.node_limit.unwrap_or(u64::MAX),
        done: &done,
        right_fwd: prime_sides(scene, index),
    };
    // first right step in parallel, the rest depth first
    let mut firsts = ext.candidates(&walk, false);
    firsts.insert(0, (usize::MAX, false));
    let results: Vec<Option<Walk>> = firsts
        .par_iter()
        .map(|&(j, rev)| {
            let mut w = walk.clone();
            let mut best = None;
            if j == usize::MAX {
                ext.dfs_left(&mut w, &mut best);
                if best.is_none() {
                    best = Some(w);
                }
            } else {
                ext.push(&mut w, j, rev, false);
                ext.dfs(&mut w, false, &mut best);
            }
            best
        })
        .collect();
    let mut best: Option<Walk> = None;
    for w in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| Extender::score(&w) > Extender::score(b)) {
            best = Some(w);
        }
    }
    let best = best.expect("the seed itself is a walk");
    let chain = walk_chain(scene, &best)?;
    let report = ExtensionReport {
        left: best.left,
        right: best.right,
        target,
        met: best.left >= target && best.right >= target,
        chain,
        nodes: nodes.load(Relaxed),
    };
    if !report.met && nodes.load(Relaxed) >= ext.limit {
        return Err(Error::ExtensionBudget(Box::new(report)));
    }
    Ok(report)
}


/// The `EXTEND v1` text form of an extension run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendText {
    pub seed: String,
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub met: bool,
    pub chain: ChainReport,
}

impl ExtendText {
    pub fn new(seed: &str, scene: &Scene, r: &ExtensionReport) -> Result<ExtendText> {
        Ok(ExtendText {
            seed: seed.to_string(),
            left: r.left,
            right: r.right,
            target: r.target,
            met: r.met,
            chain: ChainReport::from_chain(scene, &r.chain)?,
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "EXTEND v1\nseed {}\nleftmax {} rightmax {} target {} met {}\n{}",
            self.seed,
            self.left,
            self.right,
            self.target,
            u8::from(self.met),
            self.chain.to_text()
        )
    }

    pub fn from_text(text: &str) -> Result<ExtendText> {
        let mut lines = text.splitn(4, '\n');
        if lines.next() != Some("EXTEND v1") {
            return Err(Error::parse(1, "expected `EXTEND v1`"));
        }
        let seed = lines
            .next()
            .and_then(|l| l.strip_prefix("seed "))
            .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
            .ok_or_else(|| Error::parse(2, "expected `seed <file>`"))?
            .to_string();
        let counts = lines.next().unwrap_or_default();
        let f: Vec<&str> = counts.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(3, format!("bad count `{s}`")));
        let (left, right, target, met) = match f.as_slice() {
            ["leftmax", l, "rightmax", r, "target", t, "met", m @ ("0" | "1")] => (num(l)?, num(r)?, num(t)?, *m == "1"),
            _ => return Err(Error::parse(3, "expected `leftmax k rightmax k target t met 0|1`")),
        };
        let chain = ChainReport::from_text(lines.next().unwrap_or_default()).map_err(|e| match e {
            Error::Parse { line, msg } => Error::parse(line + 3, msg),
            e => e,
        })?;
        Ok(ExtendText {
            seed,
            left,
            right,
            target,
            met,
            chain,
        })
    }
}
