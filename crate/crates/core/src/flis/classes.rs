use std::collections::BTreeMap;

use super::search::{search_max_leaves, Budget};
use super::subtree::InducedSubtree;
use crate::dual::P2Graph;
use crate::geometry::{set_shape, Patch, Shape, Tile};
use crate::Result;

/// What two fully leafed trees must share to be counted as one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKey {
    /// The whole tile set up to isometry.
    Full,
    /// Only the internal tiles up to isometry, so trees differing in the
    /// choice of leaves fall together.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlisClass {
    pub shape: Shape,
    /// The member with the smallest tile-id list.
    pub representative: InducedSubtree,
    pub instances: usize,
}

/// All fully leafed induced subtrees of order `n` found in the patch,
/// optionally only those with exactly `internal` internal tiles, grouped
/// into isometry classes. Returns the maximum leaf count with the classes,
/// ordered by shape.
pub fn enumerate_flis(
    p: &Patch,
    g: &P2Graph,
    n: usize,
    internal: Option<usize>,
    key: ClassKey,
    budget: Budget,
) -> Result<(usize, Vec<FlisClass>)> {
    let budget = Budget {
        witness_cap: usize::MAX,
        ..budget
    };
    let record = search_max_leaves(g, n, budget)?;
    let mut classes: BTreeMap<Shape, FlisClass> = BTreeMap::new();
    for w in record.witnesses {
        let tree = InducedSubtree::new(g, w)?;
        let inner = tree.internal();
        if internal.is_some_and(|k| inner.len() != k) {
            continue;
        }
        let ids: &[usize] = match key {
            ClassKey::Full => tree.tiles(),
            ClassKey::Derived => &inner,
        };
        let tiles: Vec<Tile> = ids.iter().map(|&i| *p.tile(i)).collect();
        let shape = set_shape(&tiles);
        classes
            .entry(shape.clone())
            .and_modify(|c| c.instances += 1)
            .or_insert(FlisClass {
                shape,
                representative: tree,
                instances: 1,
            });
    }
    Ok((record.max_leaves, classes.into_values().collect()))
}
