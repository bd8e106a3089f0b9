use crate::dual::P2Graph;
use crate::flis::InducedSubtree;

/// The tree with its leaves removed. Empty for trees of order at most 2.
pub fn derive(g: &P2Graph, t: &InducedSubtree) -> InducedSubtree {
    let keep: Vec<usize> = if t.order() <= 2 { Vec::new() } else { t.internal() };
    InducedSubtree::new(g, keep).expect("removing leaves keeps a tree")
}

/// Whether the derived tree is a path (possibly empty).
pub fn is_caterpillar(g: &P2Graph, t: &InducedSubtree) -> bool {
    derived_path(g, t).is_some()
}

/// Tiles of a tree that is a path, in path order starting from the end with
/// the smaller id; `None` if the tree is not a path.
pub fn path_order(g: &P2Graph, t: &InducedSubtree) -> Option<Vec<usize>> {
    match t.order() {
        0 => return Some(Vec::new()),
        1 => return Some(t.tiles().to_vec()),
        _ => {}
    }
    if t.degrees().any(|(_, d)| d > 2) {
        return None;
    }
    let start = t.degrees().find(|&(_, d)| d == 1).map(|(v, _)| v)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = t.tree_neighbors(g, cur).find(|&u| u != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// The derived tree as an ordered path, if it is one.
pub fn derived_path(g: &P2Graph, t: &InducedSubtree) -> Option<Vec<usize>> {
    path_order(g, &derive(g, t))
}
