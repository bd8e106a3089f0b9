use std::fmt;

use super::tile::{Tile, TileKind};
use crate::ring::{direction_index, Cyclo10};

/// Linear isometry fixing the origin: optional reflection in the real axis
/// followed by rotation through `rotation · 36°`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    pub rotation: u8,
    pub mirror: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        rotation: 0,
        mirror: false,
    };

    /// The 20 symmetries of the decagon.
    pub fn all() -> impl Iterator<Item = Isometry> {
        (0..10u8).flat_map(|rotation| [false, true].map(|mirror| Isometry { rotation, mirror }))
    }

    pub fn apply(self, z: Cyclo10) -> Cyclo10 {
        let z = if self.mirror { z.conj() } else { z };
        z.rotate(self.rotation as i64)
    }

    /// Preimage of `z`.
    pub fn unapply(self, z: Cyclo10) -> Cyclo10 {
        let z = z.rotate(-(self.rotation as i64));
        if self.mirror {
            z.conj()
        } else {
            z
        }
    }

    /// Image of a tile (kites and darts are mirror symmetric, so tip and
    /// far vertex determine the image).
    pub fn apply_tile(self, t: &Tile) -> Tile {
        let tip = self.apply(t.anchor);
        let far = self.apply(t.far());
        let rot = direction_index(far - tip, t.kind.axis()).expect("isometries keep axes on ζ directions");
        let mut out = Tile::new(t.id, t.kind, tip, rot);
        out.mirror = t.mirror;
        out
    }
}

/// Isometry-invariant description of a tile arrangement: per tile its kind,
/// axis direction and tip position relative to a reference point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(pub Vec<(TileKind, u8, Cyclo10)>);

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, r, z)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let [a, b, c, d] = z.coeffs();
            write!(f, "{}{r}@{a},{b},{c},{d}", k.letter())?;
        }
        Ok(())
    }
}

/// Canonical shape of an unordered set of tiles, minimised over the 20
/// isometries. The reference point is the vertex centroid, kept integral
/// by scaling positions by twice the tile count.
pub fn set_shape(tiles: &[Tile]) -> Shape {
    let n = 2 * tiles.len() as i64;
    let sum: Cyclo10 = tiles.iter().map(|t| t.anchor + t.far()).sum();
    Isometry::all()
        .map(|g| {
            let mut v: Vec<_> = tiles
                .iter()
                .map(|t| {
                    let im = g.apply_tile(t);
                    (t.kind, im.rotation, im.anchor * n - g.apply(sum))
                })
                .collect();
            v.sort();
            Shape(v)
        })
        .min()
        .unwrap_or(Shape(Vec::new()))
}

/// Canonical shape of a sequence of tiles read in either direction,
/// positions taken relative to the first tip. Also returns the isometry
/// and direction (`true` = reversed) that realise it.
pub fn sequence_shape(tiles: &[Tile]) -> (Shape, Isometry, bool) {
    let mut best: Option<(Shape, Isometry, bool)> = None;
    for reversed in [false, true] {
        let order: Vec<&Tile> = if reversed {
            tiles.iter().rev().collect()
        } else {
            tiles.iter().collect()
        };
        for g in Isometry::all() {
            let images: Vec<Tile> = order.iter().map(|t| g.apply_tile(t)).collect();
            let origin = images.first().map_or(Cyclo10::ZERO, |t| t.anchor);
            let s = Shape(images.iter().map(|t| (t.kind, t.rotation, t.anchor - origin)).collect());
            if best.as_ref().is_none_or(|b| s < b.0) {
                best = Some((s, g, reversed));
            }
        }
    }
    best.unwrap_or((Shape(Vec::new()), Isometry::IDENTITY, false))
}
