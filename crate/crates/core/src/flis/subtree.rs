use std::collections::VecDeque;

use crate::dual::P2Graph;
use crate::{Error, Result};

/// A set of tiles whose induced subgraph is a tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InducedSubtree {
    tiles: Vec<usize>,
    /// Induced degree of `tiles[i]`.
    degrees: Vec<u8>,
}

impl InducedSubtree {
    /// Checks that the tiles induce a tree with all degrees at most 3.
    pub fn new(g: &P2Graph, tiles: impl IntoIterator<Item = usize>) -> Result<InducedSubtree> {
        let mut tiles: Vec<usize> = tiles.into_iter().collect();
        tiles.sort_unstable();
        tiles.dedup();
        if let Some(&t) = tiles.iter().find(|&&t| t >= g.len()) {
            return Err(Error::NotATree(format!("tile {t} is not in the graph")));
        }
        let pos = |t: usize| tiles.binary_search(&t).ok();
        let degrees: Vec<u8> = tiles
            .iter()
            .map(|&t| g.neighbors(t).iter().filter(|&&u| pos(u).is_some()).count() as u8)
            .collect();
        let edges: usize = degrees.iter().map(|&d| d as usize).sum::<usize>() / 2;
        if !tiles.is_empty() && edges != tiles.len() - 1 {
            return Err(Error::NotATree(format!("{} tiles induce {edges} edges", tiles.len())));
        }
        // connectivity
        if !tiles.is_empty() {
            let mut seen = vec![false; tiles.len()];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            let mut reached = 1;
            while let Some(i) = queue.pop_front() {
                for &u in g.neighbors(tiles[i]) {
                    if let Some(j) = pos(u) {
                        if !seen[j] {
                            seen[j] = true;
                            reached += 1;
                            queue.push_back(j);
                        }
                    }
                }
            }
            if reached != tiles.len() {
                return Err(Error::NotATree("tiles are not connected".into()));
            }
        }
        if tiles.len() >= 2 {
            if let Some(i) = degrees.iter().position(|&d| d > 3) {
                return Err(Error::NotATree(format!("tile {} has induced degree {}", tiles[i], degrees[i])));
            }
        }
        Ok(InducedSubtree { tiles, degrees })
    }

    pub fn tiles(&self) -> &[usize] {
        &self.tiles
    }

    pub fn order(&self) -> usize {
        self.tiles.len()
    }

    pub fn contains(&self, tile: usize) -> bool {
        self.tiles.binary_search(&tile).is_ok()
    }

    pub fn degree_of(&self, tile: usize) -> Option<usize> {
        self.tiles.binary_search(&tile).ok().map(|i| self.degrees[i] as usize)
    }

    /// `(tile, induced degree)` pairs in tile order.
    pub fn degrees(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tiles.iter().zip(&self.degrees).map(|(&t, &d)| (t, d as usize))
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.degrees().filter(|&(_, d)| d == 1).map(|(t, _)| t).collect()
    }

    /// Tiles of induced degree 2 or more.
    pub fn internal(&self) -> Vec<usize> {
        self.degrees().filter(|&(_, d)| d >= 2).map(|(t, _)| t).collect()
    }

    /// Neighbours of `tile` inside the tree.
    pub fn tree_neighbors<'a>(&'a self, g: &'a P2Graph, tile: usize) -> impl Iterator<Item = usize> + 'a {
        g.neighbors(tile).iter().copied().filter(move |&u| self.contains(u))
    }
}

/// Number of tiles of induced degree 1. A single tile has no leaves.
pub fn leaf_count(t: &InducedSubtree) -> usize {
    t.degrees.iter().filter(|&&d| d == 1).count()
}
