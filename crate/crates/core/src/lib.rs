//! Penrose P2 (kite and dart) tilings with exact coordinates, their dual
//! graphs, and fully leafed induced subtrees of those graphs.

pub mod caterpillar;
pub mod dual;
pub mod error;
pub mod flis;
pub mod geometry;
pub mod inflation_lab;
pub mod ring;
pub mod stargraph;

pub use dual::{build_dual, interior_tiles, P2Graph};
pub use error::{Error, Result};
