use std::fmt;

use super::derive::derived_path;
use super::prime::{turn_at, PrimeCaterpillar, PRIME_INTERNAL};
use super::sea::{detect_sea_caterpillars, SeaKind};
use super::Scene;
use crate::flis::{leaf_count, leaf_function_formula, InducedSubtree};
use crate::{Error, Result};

/// The three ways a fully leafed tree can be built from prime caterpillars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainShape {
    /// At most eight internal tiles.
    SubPrime,
    /// Primes grafted end to end, possibly with a partial prime at one end.
    Grafted,
    /// Grafted primes plus a small tree that is not a caterpillar.
    Appendix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarChain {
    pub tree: InducedSubtree,
    pub shape: ChainShape,
    /// Primes in chain order; each prime's `chain` is not reoriented, use
    /// `reversed` to read it along the chain.
    pub primes: Vec<PrimeCaterpillar>,
    /// Whether prime `i` is read backwards along the chain.
    pub reversed: Vec<bool>,
    /// Leaf shared by primes `i` and `i + 1`.
    pub graft_tiles: Vec<usize>,
    pub partial: Option<InducedSubtree>,
    pub appendix: Option<InducedSubtree>,
    /// Own stars of the primes, in chain order.
    pub star_chain: Vec<usize>,
}

impl CaterpillarChain {
    /// Flanking stars of prime `i` in chain order: before and after.
    pub fn flanks(&self, i: usize) -> [Option<usize>; 2] {
        let [a, b] = self.primes[i].flanking;
        if self.reversed[i] {
            [b, a]
        } else {
            [a, b]
        }
    }

    /// First and last internal tile of prime `i`, in chain order.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        let c = &self.primes[i].chain;
        let (a, b) = (c[0], c[PRIME_INTERNAL - 1]);
        if self.reversed[i] {
            (b, a)
        } else {
            (a, b)
        }
    }
}

/// Fully leafed orders only: `leaf_count == L(order)`.
fn check_fully_leafed(t: &InducedSubtree) -> Result<()> {
    let want = leaf_function_formula(t.order() as u64) as usize;
    if leaf_count(t) != want {
        return Err(Error::Decomposition(format!(
            "order {} with {} leaves is not fully leafed (needs {want})",
            t.order(),
            leaf_count(t)
        )));
    }
    Ok(())
}

fn with_tree_neighbours(scene: &Scene, t: &InducedSubtree, core: &[usize]) -> Result<InducedSubtree> {
    let mut tiles: Vec<usize> = core.to_vec();
    for &v in core {
        tiles.extend(t.tree_neighbors(&scene.graph, v));
    }
    InducedSubtree::new(&scene.graph, tiles)
}

/// Split a caterpillar whose derived path is `d` into primes read from the
/// start of `d`, then at most one partial prime.
fn split_path(scene: &Scene, t: &InducedSubtree, d: &[usize]) -> Option<(Vec<PrimeCaterpillar>, Vec<bool>, Vec<usize>, Option<InducedSubtree>)> {
    let step = PRIME_INTERNAL + 1;
    let mut primes = Vec::new();
    let mut reversed = Vec::new();
    let mut grafts = Vec::new();
    let mut i = 0;
    while i + PRIME_INTERNAL <= d.len() {
        let window = &d[i..i + PRIME_INTERNAL];
        if window.iter().any(|&v| t.degree_of(v) != Some(3)) {
            break;
        }
        let tree = with_tree_neighbours(scene, t, window).ok()?;
        let pc = PrimeCaterpillar::new(scene, tree).ok()?;
        reversed.push(pc.chain[0] != window[0]);
        primes.push(pc);
        match d.get(i + PRIME_INTERNAL) {
            Some(&g) if t.degree_of(g) == Some(2) => grafts.push(g),
            Some(_) => return None,
            None => {}
        }
        i += step;
    }
    if primes.is_empty() {
        return None;
    }
    let partial = if i < d.len() {
        let rest = &d[i..];
        let tree = with_tree_neighbours(scene, t, rest).ok()?;
        if tree.order() >= 18 || check_fully_leafed(&tree).is_err() {
            return None;
        }
        Some(tree)
    } else {
        None
    };
    if partial.is_none() && grafts.len() == primes.len() {
        // a trailing graft tile with nothing after it
        return None;
    }
    Some((primes, reversed, grafts, partial))
}

fn caterpillar_chain(scene: &Scene, t: &InducedSubtree) -> Result<CaterpillarChain> {
    let d = derived_path(&scene.graph, t).ok_or_else(|| Error::Decomposition("derived tree is not a path".into()))?;
    if d.len() <= PRIME_INTERNAL {
        let primes: Vec<PrimeCaterpillar> = PrimeCaterpillar::new(scene, t.clone()).into_iter().collect();
        let star_chain = primes.iter().map(|p| p.own_star).collect();
        return Ok(CaterpillarChain {
            tree: t.clone(),
            shape: ChainShape::SubPrime,
            reversed: vec![false; primes.len()],
            primes,
            graft_tiles: Vec::new(),
            partial: None,
            appendix: None,
            star_chain,
        });
    }
    let mut rev = d.clone();
    rev.reverse();
    for path in [&d, &rev] {
        if let Some((primes, reversed, graft_tiles, partial)) = split_path(scene, t, path) {
            let star_chain = primes.iter().map(|p| p.own_star).collect();
            let c = CaterpillarChain {
                tree: t.clone(),
                shape: ChainShape::Grafted,
                primes,
                reversed,
                graft_tiles,
                partial,
                appendix: None,
                star_chain,
            };
            check_star_links(scene, &c)?;
            return Ok(c);
        }
    }
    Err(Error::Decomposition("derived path does not split into grafted primes".into()))
}

/// Consecutive own stars must be star-graph neighbours and each must be
/// the other's flanking star.
fn check_star_links(scene: &Scene, c: &CaterpillarChain) -> Result<()> {
    for i in 1..c.primes.len() {
        let (a, b) = (c.star_chain[i - 1], c.star_chain[i]);
        if !scene.stars.is_adjacent(a, b) {
            return Err(Error::Structural(format!("own stars of primes {} and {i} are not joined", i - 1)));
        }
        if c.flanks(i - 1)[1] != Some(b) || c.flanks(i)[0] != Some(a) {
            return Err(Error::Structural(format!("graft {} does not follow the flanking stars", i - 1)));
        }
    }
    Ok(())
}

/// Decompose a fully leafed tree into prime caterpillars.
pub fn decompose(scene: &Scene, t: &InducedSubtree) -> Result<CaterpillarChain> {
    check_fully_leafed(t)?;
    if derived_path(&scene.graph, t).is_some() {
        return caterpillar_chain(scene, t);
    }
    // cut at a degree-2 tile into an appendix and a caterpillar of primes
    let g = &scene.graph;
    for (v, d) in t.degrees() {
        if d != 2 {
            continue;
        }
        let nb: Vec<usize> = t.tree_neighbors(g, v).collect();
        for (a, c) in [(nb[0], nb[1]), (nb[1], nb[0])] {
            let side_a = component(scene, t, a, v);
            let mut app = side_a.clone();
            app.push(v);
            let app = InducedSubtree::new(g, app)?;
            if app.internal().len() > 2 || leaf_count(&app) > 4 || check_fully_leafed(&app).is_err() {
                continue;
            }
            let mut rest = component(scene, t, c, v);
            rest.push(v);
            let rest = InducedSubtree::new(g, rest)?;
            if check_fully_leafed(&rest).is_err() {
                continue;
            }
            let Ok(mut chain) = caterpillar_chain(scene, &rest) else {
                continue;
            };
            if chain.primes.is_empty() || chain.partial.is_some() {
                continue;
            }
            chain.tree = t.clone();
            chain.shape = ChainShape::Appendix;
            chain.appendix = Some(app);
            return Ok(chain);
        }
    }
    Err(Error::Decomposition("not a caterpillar and no appendix cut found".into()))
}

/// Tiles reachable from `start` inside `t` without passing `cut`.
fn component(scene: &Scene, t: &InducedSubtree, start: usize, cut: usize) -> Vec<usize> {
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in t.tree_neighbors(&scene.graph, v) {
            if u != cut && !seen.contains(&u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen
}

/// Side of prime `i` relative to the star-graph path walked in chain order,
/// extended at both ends by the flanking stars. `None` when a flanking star
/// falls outside the patch.
pub fn prime_side(scene: &Scene, c: &CaterpillarChain, i: usize) -> Result<Option<Side>> {
    let [prev, next] = c.flanks(i);
    let (Some(prev), Some(next)) = (prev, next) else {
        return Ok(None);
    };
    let pc = &c.primes[i];
    let (right, _) = turn_at(scene, prev, pc.own_star, next, pc.inner_core())?;
    Ok(Some(if right { Side::Right } else { Side::Left }))
}

/// Sides of all primes; fails if any flanking star is missing.
pub fn side_sequence(scene: &Scene, c: &CaterpillarChain) -> Result<Vec<Side>> {
    (0..c.primes.len())
        .map(|i| prime_side(scene, c, i)?.ok_or_else(|| Error::StarGraph(format!("prime {i} lacks a flanking star"))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Colors,
    Angles,
}

/// Colours of the own stars, or angles of the primes, in chain order. An
/// angle that cannot be measured is written `?`.
pub fn chain_word(scene: &Scene, c: &CaterpillarChain, alphabet: Alphabet) -> String {
    match alphabet {
        Alphabet::Colors => c
            .star_chain
            .iter()
            .map(|&s| scene.stars.vertices[s].color.letter())
            .collect(),
        Alphabet::Angles => c
            .primes
            .iter()
            .map(|p| p.angle.map_or('?', |a| char::from(b'0' + a)))
            .collect(),
    }
}

/// A pattern that keeps a chain out of every bi-infinite fully leafed
/// caterpillar. `at` is the index of the first prime involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    TwoFours { at: usize },
    ClassOne { at: usize },
    Cape { size: u8, at: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TwoFours { at } => write!(f, "44@{at}"),
            Violation::ClassOne { at } => write!(f, "pc1@{at}"),
            Violation::Cape { size, at } => write!(f, "cape{size}@{at}"),
        }
    }
}

impl std::str::FromStr for Violation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, at) = s.split_once('@').ok_or_else(|| format!("bad violation `{s}`"))?;
        let at: usize = at.parse().map_err(|_| format!("bad index in `{s}`"))?;
        match kind {
            "44" => Ok(Violation::TwoFours { at }),
            "pc1" => Ok(Violation::ClassOne { at }),
            "cape2" => Ok(Violation::Cape { size: 2, at }),
            "cape3" => Ok(Violation::Cape { size: 3, at }),
            _ => Err(format!("unknown violation `{kind}`")),
        }
    }
}

/// Every excluded pattern in the chain: two consecutive angles of 4, a
/// class-1 prime, a cape 2 or a cape 3.
pub fn forbidden_patterns(scene: &Scene, c: &CaterpillarChain) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 1..c.primes.len() {
        if c.primes[i - 1].angle == Some(4) && c.primes[i].angle == Some(4) {
            out.push(Violation::TwoFours { at: i - 1 });
        }
    }
    for (i, p) in c.primes.iter().enumerate() {
        if p.class_id == 1 {
            out.push(Violation::ClassOne { at: i });
        }
    }
    if let Ok(sides) = side_sequence(scene, c) {
        for s in detect_sea_caterpillars(c, &sides) {
            if let (true, SeaKind::Cape(size @ (2 | 3))) = (s.closed, s.kind) {
                out.push(Violation::Cape { size, at: s.start });
            }
        }
    }
    out
}
