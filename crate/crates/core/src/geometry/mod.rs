//! Exact kite/dart geometry: prototiles, half-tile substitution, patches
//! and their validation.

mod io;
mod isometry;
mod patch;
mod tile;
mod validate;

pub use isometry::{sequence_shape, set_shape, Isometry, Shape};
pub use patch::{merge_halves, HalfCounts, Patch};
pub use tile::{Chirality, HalfTile, SeedName, Tile, TileKind, VertexColor};
pub use validate::{validate_patch, Piece, Violation};
