use std::collections::{HashMap, HashSet};
use std::fmt;

use super::patch::Patch;
use super::tile::VertexColor;
use crate::ring::{dot_sign, orient, Cyclo10};

/// A piece of a patch: a whole tile (by id) or a loose half-tile (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Tile(usize),
    Loose(usize),
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Tile(i) => write!(f, "tile {i}"),
            Piece::Loose(i) => write!(f, "loose half-tile {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Interiors of two pieces intersect.
    Overlap(Piece, Piece),
    /// A vertex of some piece lies strictly inside an edge of `piece`, so
    /// the edge is shared only partially.
    PartialEdge { piece: Piece, point: Cyclo10 },
    /// Two tiles share an edge whose endpoint colours disagree.
    MatchingRule { a: usize, b: usize, edge: (Cyclo10, Cyclo10) },
    /// Tile ids must be `0..n` in storage order.
    BadId { index: usize, id: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap(a, b) => write!(f, "{a} overlaps {b}"),
            Violation::PartialEdge { piece, point } => {
                write!(f, "vertex {point:?} lies inside an edge of {piece}")
            }
            Violation::MatchingRule { a, b, .. } => {
                write!(f, "tiles {a} and {b} share an edge with mismatched vertex colours")
            }
            Violation::BadId { index, id } => write!(f, "tile at index {index} has id {id}"),
        }
    }
}

/// Uniform bucket grid over the float embedding; used only to find
/// candidate pairs, never to decide anything.
struct Grid<T> {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<T>>,
}

impl<T: Copy> Grid<T> {
    fn new(cell: f64) -> Self {
        Grid {
            cell,
            buckets: HashMap::new(),
        }
    }

    fn cells(&self, pts: &[Cyclo10]) -> impl Iterator<Item = (i64, i64)> {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            let (x, y) = p.to_complex();
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let pad = 1e-6;
        let c = self.cell;
        let (i0, i1) = (((x0 - pad) / c).floor() as i64, ((x1 + pad) / c).floor() as i64);
        let (j0, j1) = (((y0 - pad) / c).floor() as i64, ((y1 + pad) / c).floor() as i64);
        (i0..=i1).flat_map(move |i| (j0..=j1).map(move |j| (i, j)))
    }

    fn insert(&mut self, pts: &[Cyclo10], item: T) {
        let cells: Vec<_> = self.cells(pts).collect();
        for c in cells {
            self.buckets.entry(c).or_default().push(item);
        }
    }

    fn query(&self, pts: &[Cyclo10]) -> Vec<T> {
        self.cells(pts)
            .filter_map(|c| self.buckets.get(&c))
            .flatten()
            .copied()
            .collect()
    }
}

fn ccw(t: [Cyclo10; 3]) -> [Cyclo10; 3] {
    if orient(t[0], t[1], t[2]).is_lt() {
        [t[0], t[2], t[1]]
    } else {
        t
    }
}

/// Exact test for two triangles having intersecting interiors (separating
/// axis along the six edge lines).
fn interiors_meet(a: [Cyclo10; 3], b: [Cyclo10; 3]) -> bool {
    let separated = |p: [Cyclo10; 3], q: [Cyclo10; 3]| {
        (0..3).any(|i| {
            let (s, e) = (p[i], p[(i + 1) % 3]);
            q.iter().all(|&v| orient(s, e, v).is_le())
        })
    };
    let (a, b) = (ccw(a), ccw(b));
    !(separated(a, b) || separated(b, a))
}

fn strictly_inside_segment(p: Cyclo10, a: Cyclo10, b: Cyclo10) -> bool {
    orient(a, b, p).is_eq() && dot_sign(p - a, b - a).is_gt() && dot_sign(p - b, a - b).is_gt()
}

/// Every violation of the patch rules: overlapping pieces, edges shared only
/// in part, and matching-rule breaches at shared tile edges. Empty iff the
/// patch is valid.
pub fn validate_patch(p: &Patch) -> Vec<Violation> {
    let mut out = Vec::new();
    for (index, t) in p.tiles.iter().enumerate() {
        if t.id != index {
            out.push(Violation::BadId { index, id: t.id });
        }
    }

    let mut triangles: Vec<(Piece, [Cyclo10; 3])> = Vec::new();
    for t in &p.tiles {
        for h in t.halves() {
            triangles.push((Piece::Tile(t.id), h.vertices));
        }
    }
    for (i, h) in p.loose.iter().enumerate() {
        triangles.push((Piece::Loose(i), h.vertices));
    }

    let mut grid = Grid::new(2.0);
    for (i, (_, tri)) in triangles.iter().enumerate() {
        grid.insert(tri, i);
    }
    let mut overlaps: HashSet<(Piece, Piece)> = HashSet::new();
    for (i, (pa, ta)) in triangles.iter().enumerate() {
        for j in grid.query(ta) {
            let (pb, tb) = &triangles[j];
            if j <= i || pa == pb {
                continue;
            }
            let key = if pa < pb { (*pa, *pb) } else { (*pb, *pa) };
            if !overlaps.contains(&key) && interiors_meet(*ta, *tb) {
                overlaps.insert(key);
            }
        }
    }
    let mut overlaps: Vec<_> = overlaps.into_iter().collect();
    overlaps.sort();
    out.extend(overlaps.into_iter().map(|(a, b)| Violation::Overlap(a, b)));

    // vertices strictly inside edges
    let mut points: HashSet<Cyclo10> = HashSet::new();
    let mut edges: Vec<(Piece, Cyclo10, Cyclo10)> = Vec::new();
    for t in &p.tiles {
        points.extend(t.vertices());
        edges.extend(t.edges().into_iter().map(|(a, b)| (Piece::Tile(t.id), a, b)));
    }
    for (i, h) in p.loose.iter().enumerate() {
        points.extend(h.vertices);
        let [a, b, c] = h.vertices;
        edges.extend([(a, b), (b, c), (c, a)].map(|(x, y)| (Piece::Loose(i), x, y)));
    }
    let mut pgrid = Grid::new(2.0);
    for &pt in &points {
        pgrid.insert(&[pt], pt);
    }
    let mut partial = Vec::new();
    for &(piece, a, b) in &edges {
        let mut hits: Vec<Cyclo10> = pgrid
            .query(&[a, b])
            .into_iter()
            .filter(|&pt| strictly_inside_segment(pt, a, b))
            .collect();
        hits.sort();
        hits.dedup();
        partial.extend(hits.into_iter().map(|point| Violation::PartialEdge { piece, point }));
    }
    out.extend(partial);

    // matching rule on shared tile edges
    let mut shared: HashMap<(Cyclo10, Cyclo10), Vec<(usize, VertexColor, VertexColor)>> = HashMap::new();
    for t in &p.tiles {
        let colors = t.kind.colors();
        for (i, (a, b)) in t.edges().into_iter().enumerate() {
            let (ca, cb) = (colors[i], colors[(i + 1) % 4]);
            let entry = if a < b { ((a, b), (ca, cb)) } else { ((b, a), (cb, ca)) };
            shared.entry(entry.0).or_default().push((t.id, entry.1 .0, entry.1 .1));
        }
    }
    let mut rule = Vec::new();
    for (edge, owners) in shared {
        if let [(a, ca0, ca1), (b, cb0, cb1)] = owners[..] {
            if ca0 != cb0 || ca1 != cb1 {
                rule.push(Violation::MatchingRule {
                    a: a.min(b),
                    b: a.max(b),
                    edge,
                });
            }
        }
    }
    rule.sort_by_key(|v| match v {
        Violation::MatchingRule { a, b, .. } => (*a, *b),
        _ => unreachable!(),
    });
    out.extend(rule);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{SeedName, Tile, TileKind};

    #[test]
    fn seeds_are_valid() {
        for s in SeedName::ALL {
            assert!(validate_patch(&Patch::seed(s)).is_empty(), "{s}");
        }
    }

    #[test]
    fn kites_glued_black_to_white_break_the_rule() {
        // Kite A at the origin (rotation 0) has the long edge from its tip 0
        // to φζ. Kite B is placed tip-at-φζ so that the same edge is shared
        // reversed: tip (black) against side vertex (white).
        let a = Tile::new(0, TileKind::Kite, Cyclo10::ZERO, 0);
        let tip_b = Cyclo10::PHI * Cyclo10::ZETA;
        // B's counter-clockwise side vertex must land on 0, which puts B on
        // the far side of the edge from A.
        let r = (0..10u8)
            .find(|&r| tip_b + (Cyclo10::PHI * Cyclo10::ZETA).rotate(r as i64) == Cyclo10::ZERO)
            .unwrap();
        let b = Tile::new(1, TileKind::Kite, tip_b, r);
        let p = Patch {
            tiles: vec![a, b],
            loose: vec![],
            scale_exp: 0,
        };
        let v = validate_patch(&p);
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(matches!(v[0], Violation::MatchingRule { a: 0, b: 1, .. }));
    }

    #[test]
    fn overlap_and_partial_edges_are_reported() {
        let a = Tile::new(0, TileKind::Kite, Cyclo10::ZERO, 0);
        let b = Tile::new(1, TileKind::Kite, Cyclo10::ZERO, 1);
        let v = validate_patch(&Patch {
            tiles: vec![a, b],
            loose: vec![],
            scale_exp: 0,
        });
        assert!(v.contains(&Violation::Overlap(Piece::Tile(0), Piece::Tile(1))));

        // the same kite slid one unit along its long edge
        let shifted = Tile::new(1, TileKind::Kite, Cyclo10::ZETA, 0);
        let v = validate_patch(&Patch {
            tiles: vec![a, shifted],
            loose: vec![],
            scale_exp: 0,
        });
        assert!(v.iter().any(|x| matches!(x, Violation::PartialEdge { .. })), "{v:?}");
    }

    #[test]
    fn misnumbered_ids() {
        let mut p = Patch::seed(SeedName::Star);
        p.tiles.swap(0, 1);
        assert!(validate_patch(&p).iter().any(|v| matches!(v, Violation::BadId { .. })));
    }
}
