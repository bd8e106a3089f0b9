//! Fully leafed caterpillars: prime caterpillars, grafting, the star-graph
//! chain they trace, sides, angles and the words read along the chain.

mod chain;
mod derive;
mod graft;
mod io;
mod prime;
mod sea;

use std::collections::HashMap;

pub use chain::{chain_word, decompose, forbidden_patterns, prime_side, side_sequence, Alphabet, CaterpillarChain, ChainShape, Side, Violation};
pub use derive::{derive, derived_path, is_caterpillar, path_order};
pub use graft::{graft, graft_configurations};
pub use io::{ChainReport, PrimeLine};
pub use sea::{catalogue, detect_sea_caterpillars, parse_catalogue, turn, SeaCaterpillar, SeaKind, Template};
pub(crate) use prime::turn_at;
pub use prime::{angle_of, classify_prime, find_primes, prime_chain, PrimeCaterpillar, PrimeClass, PRIME_CLASSES};

use crate::dual::{build_dual, P2Graph};
use crate::geometry::Patch;
use crate::stargraph::{star_graph_of, StarGraph};
use crate::Result;

/// A patch with its dual graph and coloured star-graph.
#[derive(Clone, Debug)]
pub struct Scene {
    pub patch: Patch,
    pub graph: P2Graph,
    pub stars: StarGraph,
    star_of_tile: HashMap<usize, usize>,
}

impl Scene {
    pub fn new(patch: Patch) -> Result<Scene> {
        let graph = build_dual(&patch)?;
        Scene::with_graph(patch, graph)
    }

    pub fn with_graph(patch: Patch, graph: P2Graph) -> Result<Scene> {
        let stars = star_graph_of(&patch, &graph)?;
        let star_of_tile = stars.star_of_tile();
        Ok(Scene {
            patch,
            graph,
            stars,
            star_of_tile,
        })
    }

    /// Star-graph vertex whose darts include `tile`.
    pub fn star_of(&self, tile: usize) -> Option<usize> {
        self.star_of_tile.get(&tile).copied()
    }
}
