use std::collections::{BTreeMap, HashMap};

use super::derive::derive;
use super::Scene;
use crate::dual::P2Graph;
use crate::flis::{leaf_count, leaf_function_formula, InducedSubtree};
use crate::geometry::{set_shape, Shape, Tile};
use crate::{Error, Result};

/// Union of two fully leafed trees meeting in the single tile `t`, a leaf
/// of both. The union must again be an induced tree and fully leafed.
pub fn graft(g: &P2Graph, a: &InducedSubtree, b: &InducedSubtree, t: usize) -> Result<InducedSubtree> {
    let common: Vec<usize> = a.tiles().iter().copied().filter(|&v| b.contains(v)).collect();
    if common != [t] {
        return Err(Error::Graft(format!("the trees share {} tiles, not just {t}", common.len())));
    }
    if a.degree_of(t) != Some(1) || b.degree_of(t) != Some(1) {
        return Err(Error::Graft(format!("tile {t} is not a leaf of both trees")));
    }
    let union = InducedSubtree::new(g, a.tiles().iter().chain(b.tiles()).copied())
        .map_err(|e| Error::Graft(format!("union is not an induced tree: {e}")))?;
    let want = leaf_function_formula(union.order() as u64) as usize;
    if leaf_count(&union) != want {
        return Err(Error::Graft(format!(
            "union of order {} has {} leaves, not {want}",
            union.order(),
            leaf_count(&union)
        )));
    }
    Ok(union)
}

/// Every valid graft between two of the given trees, grouped by the shape
/// of the twice-derived union: the stretch of internal path around the
/// junction, with the choice of leaves and the outermost tiles forgotten.
pub fn graft_configurations(scene: &Scene, trees: &[InducedSubtree]) -> BTreeMap<Shape, usize> {
    let mut by_leaf: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, t) in trees.iter().enumerate() {
        for l in t.leaves() {
            by_leaf.entry(l).or_default().push(i);
        }
    }
    let mut out = BTreeMap::new();
    for (&l, ids) in &by_leaf {
        for (k, &a) in ids.iter().enumerate() {
            for &b in &ids[k + 1..] {
                let Ok(u) = graft(&scene.graph, &trees[a], &trees[b], l) else {
                    continue;
                };
                let core = derive(&scene.graph, &derive(&scene.graph, &u));
                let tiles: Vec<Tile> = core.tiles().iter().map(|&i| *scene.patch.tile(i)).collect();
                *out.entry(set_shape(&tiles)).or_default() += 1;
            }
        }
    }
    out
}
