use std::cmp::Ordering;

use super::derive::derived_path;
use super::Scene;
use crate::dual::P2Graph;
use crate::flis::{leaf_count, search_max_leaves, Budget, InducedSubtree};
use crate::geometry::{sequence_shape, Isometry, Tile};
use crate::ring::{cross_sign, direction_index, Cyclo10};
use crate::{Error, Result};

pub const PRIME_ORDER: usize = 18;
pub const PRIME_INTERNAL: usize = 8;

/// One of the six prime classes. Positions are in the canonical frame of
/// the chain: the isometry realising [`sequence_shape`], shifted so the tip
/// of the first chain tile is at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeClass {
    pub id: u8,
    pub shape: &'static str,
    /// In units of 36°, measured on the side of the chain.
    pub angle: u8,
    pub own_star: [i64; 4],
    /// Flanking star centres beyond `chain[0]` and beyond `chain[7]`.
    pub flanks: [[i64; 4]; 2],
}

pub const PRIME_CLASSES: [PrimeClass; 6] = [
    PrimeClass {
        id: 1,
        shape: "D0@0,0,0,0 K5@1,0,0,-1 K7@1,0,0,-1 K3@2,-2,0,-3 K5@2,-2,0,-3 K1@0,-2,-2,-2 K3@0,-2,-2,-2 D8@-1,-2,-2,-1",
        angle: 4,
        own_star: [0, -1, -1, -1],
        flanks: [[3, 1, 2, -1], [0, -4, -3, -4]],
    },
    PrimeClass {
        id: 2,
        shape: "K0@0,0,0,0 K2@0,0,0,0 K4@0,0,0,0 K0@-2,0,-1,2 K2@-2,0,-1,2 K8@-3,2,-1,4 K0@-3,2,-1,4 K6@-1,2,1,3",
        angle: 6,
        own_star: [-1, 1, 0, 2],
        flanks: [[2, -2, 0, -3], [-1, 4, 2, 5]],
    },
    PrimeClass {
        id: 3,
        shape: "K0@0,0,0,0 K2@0,0,0,0 K4@0,0,0,0 K0@-2,0,-1,2 K2@-2,0,-1,2 K8@-3,2,-1,4 K0@-3,2,-1,4 D5@-2,2,0,4",
        angle: 4,
        own_star: [-1, 1, 0, 2],
        flanks: [[2, -2, 0, -3], [-6, 3, -2, 7]],
    },
    PrimeClass {
        id: 4,
        shape: "K0@0,0,0,0 K4@2,0,1,-2 K2@2,0,1,-2 K6@3,1,2,-1 K4@3,1,2,-1 K8@1,2,2,1 K6@1,2,2,1 K0@-1,2,0,2",
        angle: 8,
        own_star: [1, 1, 1, 0],
        flanks: [[-2, -1, -2, 0], [-4, 3, -1, 5]],
    },
    PrimeClass {
        id: 5,
        shape: "K0@0,0,0,0 K4@2,0,1,-2 K2@2,0,1,-2 K6@3,1,2,-1 K4@3,1,2,-1 K8@1,2,2,1 K6@1,2,2,1 D1@0,2,1,2",
        angle: 6,
        own_star: [1, 1, 1, 0],
        flanks: [[-2, -1, -2, 0], [1, 4, 3, 3]],
    },
    PrimeClass {
        id: 6,
        shape: "K0@0,0,0,0 K2@0,0,0,0 K4@0,0,0,0 K0@-2,0,-1,2 K2@-2,0,-1,2 K8@-3,2,-1,4 K0@-3,2,-1,4 K2@-3,2,-1,4",
        angle: 4,
        own_star: [-1, 1, 0, 2],
        flanks: [[2, -2, 0, -3], [-6, 3, -2, 7]],
    },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCaterpillar {
    pub tree: InducedSubtree,
    /// The internal tiles in path order, read in the canonical direction
    /// of the class shape.
    pub chain: Vec<usize>,
    pub class_id: u8,
    /// The star with a dart next to the chain.
    pub own_star: usize,
    /// Stars beyond `chain[0]` and beyond `chain[7]`; `None` when the
    /// patch ends too early.
    pub flanking: [Option<usize>; 2],
    /// Angle between the flanking edges on the chain's side, in units of
    /// 36°; `None` unless both flanking stars are present.
    pub angle: Option<u8>,
}

impl PrimeCaterpillar {
    pub fn new(scene: &Scene, tree: InducedSubtree) -> Result<PrimeCaterpillar> {
        let (class, chain, frame) = classify_chain(scene, &tree)?;
        let origin = frame.apply(scene.patch.tile(chain[0]).anchor);
        let world = |c: [i64; 4]| frame.unapply(Cyclo10::new(c[0], c[1], c[2], c[3]) + origin);
        let own_star = own_star(scene, &chain)?;
        if scene.stars.vertices[own_star].center != world(class.own_star) {
            return Err(Error::Structural(format!("own star of a class {} prime out of place", class.id)));
        }
        let mut flanking = [None; 2];
        for (slot, c) in flanking.iter_mut().zip(class.flanks) {
            *slot = scene.stars.index_of_center(world(c));
            if slot.is_some_and(|f| !scene.stars.is_adjacent(f, own_star)) {
                return Err(Error::Structural("flanking star not joined to the own star".into()));
            }
        }
        let mut pc = PrimeCaterpillar {
            tree,
            chain,
            class_id: class.id,
            own_star,
            flanking,
            angle: None,
        };
        if let [Some(a), Some(b)] = flanking {
            pc.angle = Some(turn_at(scene, a, own_star, b, pc.inner_core())?.1);
        }
        Ok(pc)
    }

    /// Internal tiles of the twice-derived tree: the chain minus two tiles
    /// at each end.
    pub fn inner_core(&self) -> &[usize] {
        &self.chain[2..PRIME_INTERNAL - 2]
    }

    pub fn class(&self) -> &'static PrimeClass {
        &PRIME_CLASSES[self.class_id as usize - 1]
    }
}

/// The chain of internal tiles if `t` has the prime structure: order 18,
/// ten leaves, eight internal tiles of degree 3 forming a path.
pub fn prime_chain(g: &P2Graph, t: &InducedSubtree) -> Result<Vec<usize>> {
    if t.order() != PRIME_ORDER {
        return Err(Error::NotPrime(format!("order {} instead of {PRIME_ORDER}", t.order())));
    }
    if leaf_count(t) != PRIME_ORDER - PRIME_INTERNAL {
        return Err(Error::NotPrime(format!("{} leaves", leaf_count(t))));
    }
    if t.degrees().any(|(_, d)| d == 2) {
        return Err(Error::NotPrime("an internal tile has degree 2".into()));
    }
    derived_path(g, t).ok_or_else(|| Error::NotPrime("derived tree is not a path".into()))
}

fn classify_chain(scene: &Scene, t: &InducedSubtree) -> Result<(&'static PrimeClass, Vec<usize>, Isometry)> {
    let mut chain = prime_chain(&scene.graph, t)?;
    let tiles: Vec<Tile> = chain.iter().map(|&i| *scene.patch.tile(i)).collect();
    let (shape, frame, reversed) = sequence_shape(&tiles);
    if reversed {
        chain.reverse();
    }
    let key = shape.to_string();
    let class = PRIME_CLASSES
        .iter()
        .find(|c| c.shape == key)
        .ok_or_else(|| Error::NotPrime(format!("unknown chain shape {key}")))?;
    Ok((class, chain, frame))
}

/// Class id in `1..=6`.
pub fn classify_prime(scene: &Scene, t: &InducedSubtree) -> Result<u8> {
    classify_chain(scene, t).map(|c| c.0.id)
}

/// The prime's angle; errors when a flanking star is missing.
pub fn angle_of(pc: &PrimeCaterpillar) -> Result<u8> {
    pc.angle
        .ok_or_else(|| Error::StarGraph("flanking star outside the patch".into()))
}

/// Every prime caterpillar (as a tile set) of the patch.
pub fn find_primes(scene: &Scene, budget: Budget) -> Result<Vec<InducedSubtree>> {
    let budget = Budget {
        witness_cap: usize::MAX,
        ..budget
    };
    let record = search_max_leaves(&scene.graph, PRIME_ORDER, budget)?;
    let mut out = Vec::new();
    for w in record.witnesses {
        let t = InducedSubtree::new(&scene.graph, w)?;
        if prime_chain(&scene.graph, &t).is_ok() {
            out.push(t);
        }
    }
    Ok(out)
}

fn own_star(scene: &Scene, chain: &[usize]) -> Result<usize> {
    let mut found: Vec<usize> = chain
        .iter()
        .flat_map(|&i| std::iter::once(i).chain(scene.graph.neighbors(i).iter().copied()))
        .filter_map(|j| scene.star_of(j))
        .collect();
    found.sort_unstable();
    found.dedup();
    match found[..] {
        [s] => Ok(s),
        [] => Err(Error::StarGraph("no star next to the prime chain".into())),
        _ => Err(Error::Structural(format!("{} stars next to one prime chain", found.len()))),
    }
}

/// Counter-clockwise steps of 36° from `u` to `v`, both star-graph edges.
fn steps(u: Cyclo10, v: Cyclo10) -> Result<u8> {
    let len = Cyclo10::phi_pow(4);
    let (a, b) = match (direction_index(u, len), direction_index(v, len)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::StarGraph("edge is not a star-graph edge".into())),
    };
    Ok((b + 10 - a) % 10)
}

/// Whether `z` lies strictly inside the sector swept counter-clockwise from
/// `u` through `theta` steps of 36°.
fn in_sector(u: Cyclo10, theta: u8, z: Cyclo10) -> bool {
    let v = u.rotate(theta as i64);
    match theta.cmp(&5) {
        Ordering::Less => cross_sign(u, z).is_gt() && cross_sign(z, v).is_gt(),
        Ordering::Equal => cross_sign(u, z).is_gt(),
        Ordering::Greater => !(cross_sign(v, z).is_ge() && cross_sign(z, u).is_ge()),
    }
}

/// For the path `prev → s → next`, whether `tiles` lie on its right and
/// the angle at `s` measured on their side.
pub(crate) fn turn_at(scene: &Scene, prev: usize, s: usize, next: usize, tiles: &[usize]) -> Result<(bool, u8)> {
    let c = |i: usize| scene.stars.vertices[i].center;
    let (e1, e2) = (c(prev) - c(s), c(next) - c(s));
    let theta = steps(e1, e2)?;
    if theta == 0 {
        return Err(Error::StarGraph("path turns back on itself".into()));
    }
    let rel: Vec<Cyclo10> = tiles
        .iter()
        .map(|&t| scene.patch.tile(t).centroid4() - c(s) * 4)
        .collect();
    if rel.iter().all(|&z| in_sector(e1, theta, z)) {
        Ok((true, theta))
    } else if rel.iter().all(|&z| in_sector(e2, 10 - theta, z)) {
        Ok((false, 10 - theta))
    } else {
        Err(Error::Structural("prime straddles the star-graph path".into()))
    }
}
